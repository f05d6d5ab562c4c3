#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "segnet/core.hpp"

namespace segnet {

// Trace records are JSON objects, one per line, with insertion-ordered keys so
// identical runs serialize byte-identically. Every record carries t (millitime),
// seq (total order within the run) and ev (record kind).
using TraceRecord = nlohmann::ordered_json;

std::string trace_to_string(const std::vector<TraceRecord>& records);
void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path);

// Throws ConfigError with a line number on unparsable lines or a truncated
// final line (missing trailing newline).
std::vector<TraceRecord> read_trace_file(const std::string& path);
std::vector<TraceRecord> parse_trace(const std::string& text);

}  // namespace segnet
