#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace segnet {

// Sim time is kept in integer millitime: 1 configured time unit = 1000 mt.
// Energy is kept in integer microenergy: 1 configured energy unit = 1e6 ue.
// Integer arithmetic everywhere keeps runs byte-reproducible and lets the
// energy ledger balance exactly.
using SimTime = std::int64_t;
using Energy = std::int64_t;
using Seq = std::uint64_t;
using NodeId = std::uint16_t;
using PktId = std::uint64_t;
using CoinId = std::uint64_t;

constexpr SimTime kTimeScale = 1000;
constexpr Energy kEnergyScale = 1000000;
constexpr std::int64_t kMilli = 1000;

// The intruder lives outside the legitimate topology.
constexpr NodeId kAttackerId = 0xFFFF;

SimTime time_from_double(double units);
Energy energy_from_double(double units);
std::int64_t milli_from_double(double value);
double time_to_double(SimTime t);
double energy_to_double(Energy e);

// Fixed-decimal formatting helpers; never go through locale-dependent paths.
std::string format_time(SimTime t);
std::string format_energy(Energy e);
std::string format_ratio(std::int64_t num, std::int64_t den);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ElectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Diagnostic verbosity on stderr, selected via SEGNET_LOG=error|info|debug.
enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace segnet
