#include "segnet/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace segnet {

SimTime time_from_double(double units) {
  return static_cast<SimTime>(std::llround(units * static_cast<double>(kTimeScale)));
}

Energy energy_from_double(double units) {
  return static_cast<Energy>(std::llround(units * static_cast<double>(kEnergyScale)));
}

std::int64_t milli_from_double(double value) {
  return static_cast<std::int64_t>(std::llround(value * 1000.0));
}

double time_to_double(SimTime t) { return static_cast<double>(t) / kTimeScale; }

double energy_to_double(Energy e) { return static_cast<double>(e) / kEnergyScale; }

namespace {

std::string format_scaled(std::int64_t value, std::int64_t scale, int places) {
  const bool neg = value < 0;
  const std::uint64_t mag = neg ? static_cast<std::uint64_t>(-(value + 1)) + 1
                                : static_cast<std::uint64_t>(value);
  const std::uint64_t uscale = static_cast<std::uint64_t>(scale);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%llu.%0*llu", neg ? "-" : "",
                static_cast<unsigned long long>(mag / uscale), places,
                static_cast<unsigned long long>(mag % uscale));
  return buf;
}

}  // namespace

std::string format_time(SimTime t) { return format_scaled(t, kTimeScale, 3); }

std::string format_energy(Energy e) { return format_scaled(e, kEnergyScale, 6); }

std::string format_ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) return "0.000000";
  // Round-half-up in fixed point, six places.
  const std::int64_t scaled = (num * 1000000 + den / 2) / den;
  return format_scaled(scaled, 1000000, 6);
}

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SEGNET_LOG");
    if (env == nullptr) return LogLevel::Info;
    const std::string v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "error") return LogLevel::Error;
    return LogLevel::Info;
  }();
  return level;
}

void log_error(const std::string& msg) {
  std::fprintf(stderr, "segnet: error: %s\n", msg.c_str());
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) std::fprintf(stderr, "segnet: %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) std::fprintf(stderr, "segnet: debug: %s\n", msg.c_str());
}

}  // namespace segnet
