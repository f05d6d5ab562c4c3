#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "segnet/trace.hpp"

using namespace segnet;

namespace {

std::vector<TraceRecord> sample_records() {
  std::vector<TraceRecord> recs;
  TraceRecord a;
  a["t"] = 0;
  a["seq"] = 0;
  a["ev"] = "run_header";
  a["name"] = "sample";
  recs.push_back(a);
  TraceRecord b;
  b["t"] = 1500;
  b["seq"] = 1;
  b["ev"] = "msg";
  b["kind"] = "wakeup_coin";
  b["src"] = 5;
  b["dst"] = 1;
  recs.push_back(b);
  return recs;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/segnet_trace_test_") + name + ".jsonl";
}

}  // namespace

TEST_CASE("records serialize one per line with a trailing newline") {
  std::string text = trace_to_string(sample_records());
  CHECK(text.back() == '\n');
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}

TEST_CASE("keys keep insertion order") {
  std::string text = trace_to_string(sample_records());
  std::string first = text.substr(0, text.find('\n'));
  CHECK(first.find("\"t\"") < first.find("\"seq\""));
  CHECK(first.find("\"seq\"") < first.find("\"ev\""));
  CHECK(first.find("\"ev\"") < first.find("\"name\""));
}

TEST_CASE("write then read roundtrips") {
  std::string path = temp_path("roundtrip");
  write_trace_file(sample_records(), path);
  std::vector<TraceRecord> back = read_trace_file(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == sample_records()[0]);
  CHECK(back[1] == sample_records()[1]);
  std::remove(path.c_str());
}

TEST_CASE("a truncated final line is rejected") {
  std::string path = temp_path("truncated");
  std::string text = trace_to_string(sample_records());
  text.pop_back();  // strip the trailing newline
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  CHECK_THROWS_AS(read_trace_file(path), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("an unparsable line reports its line number") {
  std::string text = trace_to_string(sample_records());
  text += "{not json\n";
  try {
    parse_trace(text);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("records must carry t seq and ev") {
  CHECK_THROWS_AS(parse_trace("{\"t\": 0, \"seq\": 0}\n"), ConfigError);
  CHECK_THROWS_AS(parse_trace("{\"t\": 0, \"ev\": \"x\"}\n"), ConfigError);
  CHECK_THROWS_AS(parse_trace("{\"seq\": 0, \"ev\": \"x\"}\n"), ConfigError);
  CHECK_NOTHROW(parse_trace("{\"t\": 0, \"seq\": 0, \"ev\": \"x\"}\n"));
}

TEST_CASE("blank lines are skipped") {
  std::string text = "\n{\"t\": 0, \"seq\": 0, \"ev\": \"x\"}\n\n";
  std::vector<TraceRecord> recs = parse_trace(text);
  CHECK(recs.size() == 1);
}

TEST_CASE("a top-level array is not a trace") {
  CHECK_THROWS_AS(parse_trace("[1, 2, 3]\n"), ConfigError);
}

TEST_CASE("reading a missing file fails cleanly") {
  CHECK_THROWS_AS(read_trace_file("/tmp/segnet_no_such_trace.jsonl"), ConfigError);
}
