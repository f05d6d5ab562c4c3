#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "segnet/casestudy.hpp"
#include "segnet/metrics.hpp"
#include "segnet/replay.hpp"
#include "segnet/scenario.hpp"
#include "segnet/simkernel.hpp"
#include "segnet/trace.hpp"

namespace {

using namespace segnet;

struct CommonOpts {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  bool no_detect = false;
};

ScenarioConfig load_effective(const CommonOpts& opts) {
  nlohmann::json raw = read_scenario_json(opts.scenario);
  // Flags are folded into the document before resolving so the config digest
  // matches what actually ran.
  if (opts.no_detect) apply_override(raw, "detection_enabled", "false");
  return resolve_scenario(raw, opts.scenario, opts.seed);
}

void write_outputs(const RunResult& res, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_trace_file(res.trace, out_dir + "/trace.jsonl");
  write_text_file(res.metrics.to_csv(), out_dir + "/metrics.csv");
  write_text_file(energy_series_csv(res.energy_series), out_dir + "/energy.csv");
}

int do_run(const CommonOpts& opts, const std::string& out_dir) {
  ScenarioConfig cfg = load_effective(opts);
  RunResult res = run_simulation(cfg);
  write_outputs(res, out_dir);
  if (res.election_failed) {
    log_error("initial role election failed: " + res.election_error);
    return 3;
  }
  std::printf("scenario %s seed %llu: %zu trace records, detection_rate %s, "
              "false_positive_rate %s, lifetime %s, outputs in %s\n",
              cfg.name.c_str(), static_cast<unsigned long long>(cfg.seed), res.trace.size(),
              format_ratio(res.metrics.detection_rate_micro(), 1000000).c_str(),
              format_ratio(res.metrics.false_positive_rate_micro(), 1000000).c_str(),
              format_time(res.metrics.network_lifetime).c_str(), out_dir.c_str());
  return 0;
}

int do_casestudy(const std::string& trace_path) {
  CaseStudyReport report = run_casestudy();
  for (const auto& step : report.steps) {
    std::printf("%-11s %s: %s\n", to_string(step.state), step.name.c_str(),
                step.detail.c_str());
  }
  if (!trace_path.empty()) write_trace_file(report.result.trace, trace_path);
  return report.all_passed() ? 0 : 1;
}

int do_replay(const CommonOpts& opts, const std::string& trace_path) {
  ScenarioConfig cfg = load_effective(opts);
  std::vector<TraceRecord> trace = read_trace_file(trace_path);
  ReplayReport rep = replay_trace(trace, cfg);
  if (rep.digest_mismatch) {
    log_error("trace was produced by a different configuration (digest mismatch)");
    return 4;
  }
  std::printf("replayed %lld records: %lld verdicts re-derived, %lld scripted records skipped, "
              "%lld divergences\n",
              static_cast<long long>(rep.records_processed),
              static_cast<long long>(rep.verdicts_checked),
              static_cast<long long>(rep.skipped_compromised),
              static_cast<long long>(rep.divergence_count));
  if (rep.divergence_count > 0) {
    for (const auto& d : rep.divergences) log_error("divergence: " + d);
    return 4;
  }
  return 0;
}

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int do_sweep(const CommonOpts& opts, const std::vector<std::string>& vary_specs,
             const std::string& seeds_spec, const std::string& out_path) {
  nlohmann::json base = read_scenario_json(opts.scenario);
  if (opts.no_detect) apply_override(base, "detection_enabled", "false");
  std::vector<SweepAxis> axes;
  for (const auto& spec : vary_specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= spec.size()) {
      throw ConfigError("--vary expects key=v1,v2,... got '" + spec + "'");
    }
    SweepAxis axis{spec.substr(0, eq), split_csv(spec.substr(eq + 1))};
    // Validate the key up front so typos abort before any run.
    nlohmann::json probe = base;
    apply_override(probe, axis.key, axis.values.front());
    axes.push_back(std::move(axis));
  }
  std::vector<std::uint64_t> seeds;
  for (const auto& s : seeds_spec.empty() ? std::vector<std::string>{}
                                          : split_csv(seeds_spec)) {
    try {
      seeds.push_back(std::stoull(s));
    } catch (const std::exception&) {
      throw ConfigError("--seeds expects a comma-separated list of integers, got '" + s + "'");
    }
  }

  std::string csv;
  for (const auto& axis : axes) csv += axis.key + ",";
  csv += "seed,detection_rate,false_positive_rate,packets_delivered,packets_dropped_fake,"
         "packets_dropped_erroneous,packet_overhead,network_lifetime,deactivated\n";

  std::vector<std::size_t> idx(axes.size(), 0);
  bool done = false;
  while (!done) {
    nlohmann::json doc = base;
    std::string prefix;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      apply_override(doc, axes[i].key, axes[i].values[idx[i]]);
      prefix += axes[i].values[idx[i]] + ",";
    }
    std::vector<std::uint64_t> run_seeds = seeds;
    if (run_seeds.empty() && opts.seed) run_seeds.push_back(*opts.seed);
    if (run_seeds.empty()) run_seeds.push_back(0);  // scenario's own seed
    for (std::uint64_t seed : run_seeds) {
      std::optional<std::uint64_t> seed_arg;
      if (!seeds.empty() || opts.seed) seed_arg = seed;
      ScenarioConfig cfg = resolve_scenario(doc, opts.scenario, seed_arg);
      RunResult res = run_simulation(cfg);
      if (res.election_failed) {
        log_error("initial role election failed during sweep: " + res.election_error);
        return 3;
      }
      const Metrics& m = res.metrics;
      csv += prefix + std::to_string(cfg.seed) + "," +
             format_ratio(m.detection_rate_micro(), 1000000) + "," +
             format_ratio(m.false_positive_rate_micro(), 1000000) + "," +
             std::to_string(m.packets_delivered) + "," + std::to_string(m.packets_dropped_fake) +
             "," + std::to_string(m.packets_dropped_erroneous) + "," +
             format_ratio(m.overhead_micro(), 1000000) + "," + format_time(m.network_lifetime) +
             "," + std::to_string(m.deactivated ? 1 : 0) + "\n";
    }
    // Advance the cartesian product.
    done = true;
    for (std::size_t i = axes.size(); i-- > 0;) {
      if (++idx[i] < axes[i].values.size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (axes.empty()) break;
  }
  if (out_path.empty() || out_path == "-") {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_text_file(csv, out_path);
    std::printf("sweep results written to %s\n", out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator for the SEGNET geo-sensor defense protocol"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  std::string run_out = "out";
  auto* run_cmd = app.add_subcommand("run", "run one scenario and write trace/metrics/energy");
  run_cmd->add_option("--scenario", run_opts.scenario, "scenario JSON file")->required();
  run_cmd->add_option("--seed", run_opts.seed, "override the scenario seed");
  run_cmd->add_flag("--no-detect", run_opts.no_detect, "disable the detection layer");
  run_cmd->add_option("--out", run_out, "output directory (default: out)");

  std::string cs_trace;
  auto* cs_cmd = app.add_subcommand("casestudy", "run the built-in narrative fixture");
  cs_cmd->add_option("--trace", cs_trace, "also write the fixture trace to this file");

  CommonOpts replay_opts;
  std::string replay_trace_path;
  auto* replay_cmd =
      app.add_subcommand("replay", "re-derive all verdicts in a trace from the scenario rules");
  replay_cmd->add_option("--scenario", replay_opts.scenario, "scenario JSON file")->required();
  replay_cmd->add_option("--trace", replay_trace_path, "trace file to verify")->required();
  replay_cmd->add_option("--seed", replay_opts.seed, "seed used for the original run");
  replay_cmd->add_flag("--no-detect", replay_opts.no_detect,
                       "the original run had detection disabled");

  CommonOpts sweep_opts;
  std::vector<std::string> sweep_vary;
  std::string sweep_seeds;
  std::string sweep_out = "-";
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep and emit CSV");
  sweep_cmd->add_option("--scenario", sweep_opts.scenario, "scenario JSON file")->required();
  sweep_cmd->add_option("--vary", sweep_vary, "axis as key=v1,v2,... (repeatable)");
  sweep_cmd->add_option("--seeds", sweep_seeds, "comma-separated seed list");
  sweep_cmd->add_flag("--no-detect", sweep_opts.no_detect, "disable the detection layer");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(run_opts, run_out);
    if (cs_cmd->parsed()) return do_casestudy(cs_trace);
    if (replay_cmd->parsed()) return do_replay(replay_opts, replay_trace_path);
    if (sweep_cmd->parsed()) return do_sweep(sweep_opts, sweep_vary, sweep_seeds, sweep_out);
  } catch (const ConfigError& e) {
    log_error(e.what());
    return 2;
  } catch (const ElectionError& e) {
    log_error(e.what());
    return 3;
  } catch (const std::exception& e) {
    log_error(e.what());
    return 1;
  }
  return 0;
}
