// Copyright 2026 The saferules Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "saferules/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "saferules/audit.hpp"
#include "saferules/config.hpp"
#include "saferules/error.hpp"
#include "saferules/monitor.hpp"
#include "saferules/pgm.hpp"
#include "saferules/rules/compiler.hpp"
#include "saferules/rules/parser.hpp"
#include "saferules/standards.hpp"

namespace saferules::cli {

namespace fs = std::filesystem;

namespace {

struct RunOptions {
  std::string rules_path;
  std::string pipeline_path;
  std::string input_dir;
  std::string synthetic_path;
  std::vector<std::string> inject;
  std::optional<int> frames;
  std::string log_path;
  std::string latch_path;
  std::string report_path;
  std::string export_dir;
  std::optional<int> bit_depth;
  bool no_timestamp = false;
  bool reset = false;
};

std::string read_text(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void report_error(std::ostream& err, const std::string& where, const Error& e) {
  err << (where.empty() ? "" : where + ":") << e.what() << " [" << e.name() << "]\n";
}

rules::CompiledRuleSet compile_rules(const std::string& rules_path, const PipelineGraph& graph, std::ostream& err) {
  const auto source = read_text(rules_path);
  try {
    return rules::compile(source, graph);
  } catch (const PositionedError& e) {
    report_error(err, rules_path, e);
    throw;
  }
}

// Stereo frames in a directory, paired as <frame>_L.pgm / <frame>_R.pgm.
std::vector<std::pair<fs::path, fs::path>> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw ConfigError("input directory " + dir.string() + " does not exist");
  std::vector<std::pair<fs::path, fs::path>> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    const std::string suffix = "_L.pgm";
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
      continue;
    }
    const auto right = dir / (name.substr(0, name.size() - suffix.size()) + "_R.pgm");
    if (!fs::exists(right)) throw ConfigError("frame " + name + " has no right image " + right.string());
    out.emplace_back(entry.path(), right);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<PipelineDecision> read_latch(const fs::path& path) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  std::ostringstream line;
  line << "DECISION\t0\t" << is.rdbuf();
  std::istringstream record(line.str());
  auto recs = parse_audit_log(record);
  if (recs.size() != 1 || !recs[0].decision) throw ConfigError("corrupt latch file " + path.string());
  return recs[0].decision;
}

void write_latch(const fs::path& path, const PipelineDecision& decision) {
  std::ostringstream rec;
  AuditLog(rec, false).append(0, {}, decision);
  const auto line = rec.str();
  std::ofstream os(path, std::ios::trunc);
  // Strip the "DECISION\t0\t" prefix; the latch file holds state, trips and timestamp.
  os << line.substr(line.find('\t', line.find('\t') + 1) + 1);
  if (!os) throw IoError("cannot write latch file " + path.string());
}

void write_report(const std::string& path, const standards::CoverageReport& report, std::ostream& out) {
  if (path.empty()) {
    out << report.to_text();
    return;
  }
  std::ofstream text(path);
  std::ofstream records(path + ".records");
  text << report.to_text();
  records << report.to_records();
  if (!text || !records) throw IoError("cannot write report " + path);
}

int cmd_check(const std::string& rules_path, const std::string& pipeline_path, std::ostream& out,
              std::ostream& err) {
  try {
    const auto cfg = config::load_pipeline_config(pipeline_path);
    const auto compiled = compile_rules(rules_path, cfg.graph, err);
    if (compiled.rules.empty()) err << rules_path << ": warning: no assertions defined\n";
    out << compiled.rules.size() << " rules compiled\n";
    for (const auto& r : compiled.rules) {
      out << "  " << r.id << "  line " << r.span.begin.line << "  " << r.text << "\n";
    }
    return kExitContinue;
  } catch (const PositionedError&) {
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, "", e);
    return kExitUsage;
  }
}

int cmd_report(const std::string& rules_path, const std::string& pipeline_path, const std::string& report_path,
               std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = config::load_pipeline_config(pipeline_path);
    const auto compiled = compile_rules(rules_path, cfg.graph, err);
    write_report(report_path, standards::coverage_report(compiled, cfg.mapping), out);
    return kExitContinue;
  } catch (const PositionedError&) {
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, "", e);
    return kExitUsage;
  }
}

std::string summarize(const std::vector<Verdict>& verdicts) {
  std::string out;
  for (const auto& v : verdicts) out += " " + v.rule_id + "=" + std::string(to_string(v.outcome));
  return out;
}

std::vector<Verdict> error_verdicts(const rules::CompiledRuleSet& compiled, std::int64_t frame, const Error& e) {
  std::vector<Verdict> out;
  for (const auto& r : compiled.rules) {
    out.push_back(Verdict{r.id, frame, Outcome::Error, {}, e.name() + ": " + e.what(), e.name()});
  }
  return out;
}

int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  // Everything up to the frame loop is configuration: failures exit 1.
  std::optional<config::PipelineConfig> cfg;
  std::optional<rules::CompiledRuleSet> compiled;
  std::optional<config::SyntheticConfig> synthetic;
  std::vector<std::pair<fs::path, fs::path>> frames_on_disk;
  std::vector<FaultSpec> faults;
  std::ofstream log_file;
  int frame_count = 1;
  fs::path latch_path;
  PipelineDecision decision;

  try {
    if (opt.input_dir.empty() == opt.synthetic_path.empty()) {
      throw ConfigError("select exactly one input mode: --input DIR or --synthetic PATH");
    }
    cfg.emplace(config::load_pipeline_config(opt.pipeline_path));
    compiled.emplace(compile_rules(opt.rules_path, cfg->graph, err));
    if (compiled->rules.empty()) err << opt.rules_path << ": warning: no assertions defined\n";

    if (!opt.synthetic_path.empty()) {
      synthetic.emplace(config::load_synthetic_config(opt.synthetic_path, cfg->graph.calibration()));
      if (opt.bit_depth) {
        synthetic->scene.bit_depth = *opt.bit_depth;
        synthetic->scene.validate();
      }
      faults = synthetic->faults;
      frame_count = opt.frames.value_or(synthetic->frames.value_or(1));
    } else {
      frames_on_disk = list_frames(opt.input_dir);
      frame_count = static_cast<int>(frames_on_disk.size());
      if (opt.frames) frame_count = std::min(frame_count, *opt.frames);
    }
    if (frame_count < 0) throw ConfigError("--frames must be non-negative");
    for (const auto& f : opt.inject) faults.push_back(parse_fault(f));

    if (!opt.log_path.empty()) {
      log_file.open(opt.log_path, std::ios::app);
      if (!log_file) throw IoError("cannot open audit log " + opt.log_path);
    }
    latch_path = !opt.latch_path.empty() ? fs::path(opt.latch_path)
                 : !opt.log_path.empty() ? fs::path(opt.log_path + ".latch")
                                          : fs::path();
    if (!opt.export_dir.empty()) fs::create_directories(opt.export_dir);
  } catch (const PositionedError&) {
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, "", e);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    std::optional<AuditLog> log;
    if (log_file.is_open()) log.emplace(log_file, !opt.no_timestamp);

    if (!latch_path.empty()) {
      if (opt.reset) {
        fs::remove(latch_path);
        if (log) log->append_reset(0);
        out << "latch cleared by operator reset\n";
      } else if (auto latched = read_latch(latch_path)) {
        decision = *latched;
        out << "protective stop still latched from a previous run; use --reset to clear it\n";
      }
    } else if (opt.reset && log) {
      log->append_reset(0);
    }

    std::optional<std::int64_t> stop_frame;
    for (int i = 0; i < frame_count; ++i) {
      const std::int64_t frame_id = i;
      std::vector<Verdict> verdicts;
      try {
        StereoPair pair;
        if (synthetic) {
          pair = render_scene(synthetic->scene, static_cast<std::uint64_t>(i));
        } else {
          pair = {pgm::read_raw_file(frames_on_disk[i].first), pgm::read_raw_file(frames_on_disk[i].second)};
          if (opt.bit_depth) {
            pair.left.bit_depth = pair.right.bit_depth = *opt.bit_depth;
          }
        }
        pair = apply_faults(std::move(pair), faults);
        if (!opt.export_dir.empty()) {
          const auto stem = fs::path(opt.export_dir) / std::to_string(frame_id);
          pgm::write_raw_file(stem.string() + "_L.pgm", pair.left);
          pgm::write_raw_file(stem.string() + "_R.pgm", pair.right);
        }
        const FrameStore store = run_frame(cfg->graph, pair.left, pair.right, frame_id);
        verdicts = evaluate(*compiled, store);
      } catch (const IoError&) {
        throw;
      } catch (const Error& e) {
        // Fail-safe: a frame the pipeline cannot process trips every rule.
        verdicts = error_verdicts(*compiled, frame_id, e);
      }

      const bool was_stopped = decision.stopped();
      decision = gate(verdicts, decision);
      if (log) log->append(frame_id, verdicts, decision);
      out << "frame " << frame_id << ":" << summarize(verdicts) << " -> " << to_string(decision.state) << "\n";
      if (decision.stopped() && !was_stopped) {
        stop_frame = frame_id;
        for (const auto& v : verdicts) {
          if (v.outcome != Outcome::Pass) out << "  " << v.rule_id << " " << to_string(v.outcome) << ": " << v.message << "\n";
        }
      }
    }

    if (!latch_path.empty() && decision.stopped()) write_latch(latch_path, decision);
    if (!opt.report_path.empty()) write_report(opt.report_path, standards::coverage_report(*compiled, cfg->mapping), out);

    if (decision.stopped()) {
      out << "PROTECTIVE_STOP latched";
      if (stop_frame) out << " at frame " << *stop_frame;
      out << "; operator reset required\n";
      return kExitProtectiveStop;
    }
    out << "CONTINUE: all rules passed on " << frame_count << " frame(s)\n";
    return kExitContinue;
  } catch (const Error& e) {
    report_error(err, "", e);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Declarative safety rules for stereo perception pipelines", "saferules"};
  app.require_subcommand(1);

  std::string rules_path;
  std::string pipeline_path;
  std::string report_path;
  RunOptions run;

  auto* check = app.add_subcommand("check", "Parse and type-check a rule file against a pipeline");
  check->add_option("--rules", rules_path, "Rule file (.rules)")->required();
  check->add_option("--pipeline", pipeline_path, "Pipeline configuration (JSON)")->required();

  auto* run_cmd = app.add_subcommand("run", "Execute the pipeline and monitor every frame");
  run_cmd->add_option("--rules", run.rules_path, "Rule file (.rules)")->required();
  run_cmd->add_option("--pipeline", run.pipeline_path, "Pipeline configuration (JSON)")->required();
  auto* input_opt = run_cmd->add_option("--input", run.input_dir, "Directory of <frame>_L.pgm/<frame>_R.pgm pairs");
  auto* synth_opt = run_cmd->add_option("--synthetic", run.synthetic_path, "Synthetic scene configuration (JSON)");
  input_opt->excludes(synth_opt);
  run_cmd->add_option("--inject", run.inject, "Lens fault KIND:TARGET[:PARAM] (repeatable)");
  run_cmd->add_option("--frames", run.frames, "Number of frames to process");
  run_cmd->add_option("--log", run.log_path, "Audit log (appended)");
  run_cmd->add_option("--latch", run.latch_path, "Latch file (default: <log>.latch)");
  run_cmd->add_option("--report", run.report_path, "Write the coverage report here");
  run_cmd->add_option("--export", run.export_dir, "Write each processed raw pair to this directory");
  run_cmd->add_option("--bit-depth", run.bit_depth, "Override the sensor bit depth")->check(CLI::Range(8, 16));
  run_cmd->add_flag("--no-timestamp", run.no_timestamp, "Write '-' instead of timestamps");
  run_cmd->add_flag("--reset", run.reset, "Operator reset: clear a latched protective stop first");

  auto* report = app.add_subcommand("report", "Emit the safety-function coverage report");
  report->add_option("--rules", rules_path, "Rule file (.rules)")->required();
  report->add_option("--pipeline", pipeline_path, "Pipeline configuration with safety_mapping")->required();
  report->add_option("--report", report_path, "Output path (stdout if omitted)");

  std::vector<const char*> argv{"saferules"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitContinue;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitContinue;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (check->parsed()) return cmd_check(rules_path, pipeline_path, out, err);
  if (report->parsed()) return cmd_report(rules_path, pipeline_path, report_path, out, err);
  return cmd_run(run, out, err);
}

}  // namespace saferules::cli
