#include "segnet/trace.hpp"

#include <fstream>
#include <sstream>

namespace segnet {

std::string trace_to_string(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_trace_file(const std::vector<TraceRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open trace file for writing: " + path);
  f << trace_to_string(records);
  if (!f) throw ConfigError("failed writing trace file: " + path);
}

std::vector<TraceRecord> parse_trace(const std::string& text) {
  std::vector<TraceRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": truncated final line (no trailing newline)");
    }
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    TraceRecord rec = TraceRecord::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": invalid JSON");
    }
    if (!rec.is_object() || !rec.contains("t") || !rec.contains("seq") || !rec.contains("ev")) {
      throw ConfigError("trace line " + std::to_string(line_no) +
                        ": record missing t/seq/ev fields");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open trace file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_trace(ss.str());
}

}  // namespace segnet
