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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "saferules/audit.hpp"
#include "saferules/cli.hpp"
#include "saferules/faults.hpp"
#include "saferules/kernels.hpp"
#include "saferules/monitor.hpp"
#include "saferules/rules/parser.hpp"
#include "saferules/standards.hpp"
#include "test_support.hpp"

namespace saferules::acceptance {
namespace {

using test::Rng;
using test::uniform;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(secs < budget_s, "took " + std::to_string(secs) + " s, budget " + std::to_string(budget_s) + " s");
  std::printf("[%s] criterion %d: %s (%.2f s, budget %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              budget_s, c.ok ? "" : " -- ", c.why.str().c_str());
  std::fflush(stdout);
  failures += c.ok ? 0 : 1;
}

std::string src(const std::string& rel) { return (test::source_dir() / rel).string(); }

struct CliRun {
  int code;
  std::vector<AuditRecord> records;
  std::string out;
};

CliRun run_cli(const std::string& name, std::vector<std::string> extra,
               const std::string& scene = "configs/scene_default.json") {
  const auto dir = test::scratch_dir("acceptance_" + name);
  const auto log = (dir / "audit.log").string();
  std::vector<std::string> args{"run",         "--rules", src("rules/camera_health.rules"), "--pipeline",
                                src("configs/stereo_pipeline.json"), "--synthetic", src(scene),
                                "--log",       log,       "--no-timestamp"};
  args.insert(args.end(), extra.begin(), extra.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::main(args, out, err);
  std::ifstream is(log);
  return {code, parse_audit_log(is), out.str() + err.str()};
}

const Verdict* find_verdict(const CliRun& r, const std::string& rule, std::int64_t frame = 0) {
  for (const auto& rec : r.records) {
    if (rec.verdict && rec.verdict->rule_id == rule && rec.verdict->frame_id == frame) return &*rec.verdict;
  }
  return nullptr;
}

const PipelineDecision* decision_at(const CliRun& r, std::int64_t frame) {
  for (const auto& rec : r.records) {
    if (rec.decision && rec.frame_id == frame) return &*rec.decision;
  }
  return nullptr;
}

// --- independent oracle for the three reference rules -----------------------

struct OracleOutcome {
  bool r1;
  bool r2;
  bool r3;
  Rational ratio;
  std::int64_t spread;
  std::int64_t landmark_points;
};

OracleOutcome oracle(const RawImage& left_raw, const DisparityImage& disp, const CalibrationInfo& c) {
  // Cell-mean greyscale, then the set of distinct levels.
  std::vector<bool> seen(static_cast<std::size_t>(1) << left_raw.bit_depth, false);
  for (int y = 0; y < left_raw.height; y += 2) {
    for (int x = 0; x < left_raw.width; x += 2) {
      const double mean =
          (left_raw.at(x, y) + left_raw.at(x + 1, y) + left_raw.at(x, y + 1) + left_raw.at(x + 1, y + 1)) / 4.0;
      seen[static_cast<std::size_t>(std::floor(mean + 0.5))] = true;
    }
  }
  std::int64_t occupied = 0;
  std::int64_t lo = -1;
  std::int64_t hi = -1;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) continue;
    ++occupied;
    if (lo < 0) lo = static_cast<std::int64_t>(i);
    hi = static_cast<std::int64_t>(i);
  }
  const auto levels = static_cast<std::int64_t>(seen.size());

  std::int64_t inside = 0;
  for (int v = 0; v < disp.height; ++v) {
    for (int u = 0; u < disp.width; ++u) {
      const int d = disp.at(u, v);
      if (d <= 0) continue;
      // The landmark edges project exactly onto the region faces, so the
      // floating-point evaluation order of the pinhole formula matters.
      const double z = c.focal_length * c.baseline / d;
      const double x = (u - c.cx) * z / c.focal_length;
      const double y = (v - c.cy) * z / c.focal_length;
      inside += (x >= -0.15 && x <= 0.15 && y >= 0.10 && y <= 0.40 && z >= 1.2 && z <= 1.8) ? 1 : 0;
    }
  }
  // Integer forms of the thresholds: occupied/levels > 1/10, spread > 1000, count > 900.
  return {10 * occupied > levels, hi - lo > 1000, inside > 900, Rational(occupied, levels), hi - lo, inside};
}

// --- criteria -----------------------------------------------------------------

void dsl_fidelity(Check& c) {
  const auto source = test::read_file(src("rules/camera_health.rules"));
  c.expect(source.find(test::kHistogramSnippet) != std::string::npos, "histogram snippet not verbatim in rule file; ");
  c.expect(source.find(test::kLandmarkSnippet) != std::string::npos, "landmark snippet not verbatim in rule file; ");
  const auto rs = rules::parse_source(source);
  const auto golden = test::read_file(src("tests/golden/camera_health.ast"));
  c.expect(rules::dump(rs) == golden, "AST differs from golden file; ");
  const auto compiled = rules::resolve(rs, test::stereo_graph());
  c.expect(compiled.rules.size() == 3, "expected 3 rules; ");
  c.expect(compiled.rules.size() == 3 && compiled.rules[0].id == "R1" && compiled.rules[2].id == "R3",
           "rule ids; ");
}

void covered_lens(Check& c) {
  const auto r = run_cli("cover", {"--inject", "cover:left", "--bit-depth", "8"});
  c.expect(r.code == cli::kExitProtectiveStop, "exit status " + std::to_string(r.code) + "; ");
  const auto* r1 = find_verdict(r, "R1");
  c.expect(r1 && r1->outcome == Outcome::Fail, "R1 did not fail; ");
  c.expect(r1 && !r1->evaluated.empty() && r1->evaluated[0].value <= Rational(3, 256),
           "ratio above 3/256: " + (r1 && !r1->evaluated.empty() ? format_rational(r1->evaluated[0].value) : "-") +
               "; ");
  const auto* d0 = decision_at(r, 0);
  c.expect(d0 && d0->stopped(), "not latched at frame 0; ");
}

void overexposure(Check& c) {
  const auto left = run_cli("overexpose_left", {"--inject", "overexpose:left"});
  c.expect(left.code == cli::kExitProtectiveStop, "left: exit " + std::to_string(left.code) + "; ");
  const auto* r1 = find_verdict(left, "R1");
  c.expect(r1 && r1->outcome == Outcome::Fail, "left: R1 did not fail; ");
  // The ratio rule watches the left camera; an overexposed right lens is
  // still caught, through the landmark rule.
  const auto right = run_cli("overexpose_right", {"--inject", "overexpose:right"});
  c.expect(right.code == cli::kExitProtectiveStop, "right: exit " + std::to_string(right.code) + "; ");
}

void partial_cover_false_negative(Check& c) {
  // Known limitation, reproduced on purpose: a band over the left third of
  // the lens leaves enough levels, spread and landmark points for every rule.
  const auto r = run_cli("partial", {}, "configs/scene_partial_cover.json");
  c.expect(r.code == cli::kExitContinue, "exit status " + std::to_string(r.code) + "; ");
  for (const char* id : {"R1", "R2", "R3"}) {
    const auto* v = find_verdict(r, id);
    c.expect(v && v->outcome == Outcome::Pass, std::string(id) + " did not pass; ");
  }
}

void landmark(Check& c) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::reference_rules(), g);
  SceneConfig cfg;
  auto pair = render_scene(cfg);
  auto verdicts = evaluate(rules, run_frame(g, pair.left, pair.right, 0));
  c.expect(verdicts[2].outcome == Outcome::Pass, "clean scene R3: " + verdicts[2].message + "; ");
  c.expect(!verdicts[2].evaluated.empty() && verdicts[2].evaluated[0].value > Rational(900), "clean count; ");

  cfg.landmark.present = false;
  pair = render_scene(cfg);
  verdicts = evaluate(rules, run_frame(g, pair.left, pair.right, 0));
  c.expect(verdicts[2].outcome == Outcome::Fail, "no landmark R3: " + verdicts[2].message + "; ");

  FrameStore store(g, 0);
  auto cloud = std::make_shared<PointCloud>();
  cloud->points.assign(900, Point3{0.0, 0.25, 1.5});
  store.put("PointCloud_3D", "output", cloud);
  store.seal();
  const auto boundary = evaluate(rules::compile(test::kLandmarkSnippet, g), store)[0];
  c.expect(boundary.outcome == Outcome::Fail, "900 points did not fail; ");
}

void oracle_equivalence(Check& c) {
  const auto g = test::stereo_graph();
  const auto rules = rules::compile(test::reference_rules(), g);
  Rng rng(20261014);
  int disagreements = 0;
  int outcomes[3][2] = {};
  for (int frame = 0; frame < 100; ++frame) {
    SceneConfig cfg;
    cfg.seed = rng();
    cfg.noise_amplitude = uniform(rng, 0, 40);
    cfg.landmark.present = uniform(rng, 0, 3) != 0;
    cfg.bit_depth = uniform(rng, 0, 1) ? 12 : 8 + 2 * uniform(rng, 0, 4);
    std::vector<FaultSpec> faults;
    if (uniform(rng, 0, 1)) {
      FaultSpec f;
      f.kind = static_cast<FaultKind>(uniform(rng, 0, 2));
      f.target = uniform(rng, 0, 1) ? CameraSide::Left : CameraSide::Right;
      f.fraction = uniform(rng, 5, 100) / 100.0;
      f.gain = uniform(rng, 1, 8);
      f.offset = uniform(rng, 0, 100) / 100.0;
      f.seed = rng();
      faults.push_back(f);
    }
    const auto pair = apply_faults(render_scene(cfg, static_cast<std::uint64_t>(frame)), faults);
    const auto store = run_frame(g, pair.left, pair.right, frame);
    const auto verdicts = evaluate(rules, store);
    const auto want = oracle(pair.left, store.get<DisparityImage>("DisparityMap", "output"), g.calibration());
    const bool expected[3] = {want.r1, want.r2, want.r3};
    const Rational values[3] = {want.ratio, Rational(want.spread), Rational(want.landmark_points)};
    for (int k = 0; k < 3; ++k) {
      const auto& v = verdicts[static_cast<std::size_t>(k)];
      const bool agree = v.outcome == (expected[k] ? Outcome::Pass : Outcome::Fail) && !v.evaluated.empty() &&
                         v.evaluated[0].value == values[k];
      if (!agree) {
        ++disagreements;
        c.expect(false, "frame " + std::to_string(frame) + " " + v.rule_id + ": engine " +
                            std::string(to_string(v.outcome)) + " vs oracle " + (expected[k] ? "PASS" : "FAIL") + "; ");
      }
      ++outcomes[k][expected[k] ? 1 : 0];
    }
  }
  // The randomized frames must exercise both outcomes of every rule.
  for (int k = 0; k < 3; ++k) {
    c.expect(outcomes[k][0] > 0 && outcomes[k][1] > 0, "R" + std::to_string(k + 1) + " saw one outcome only; ");
  }
  c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements; ");
}

// Each property suite must finish within its own budget.
void property_suites(Check& c) {
  auto timed = [&](const std::string& name, const std::function<bool()>& suite) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool ok = suite();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(ok, name + " failed; ");
    c.expect(secs < 30.0, name + " exceeded 30 s; ");
  };

  timed("histogram conservation", [] {
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
      const auto img = test::random_mono(rng, 40);
      const auto h = kernels::histogram(img);
      std::uint64_t sum = 0;
      for (auto n : h.counts) sum += n;
      if (sum != img.pixel_count() || h.total != img.pixel_count()) return false;
    }
    return true;
  });

  timed("reprojection round-trip", [] {
    Rng rng(2);
    CalibrationInfo calib;
    for (int i = 0; i < 20; ++i) {
      DisparityImage d(64, 48, 64);
      for (auto& v : d.values) v = uniform(rng, -1, 64);
      const auto cloud = kernels::reproject(d, calib);
      std::size_t k = 0;
      for (int v = 0; v < d.height; ++v) {
        for (int u = 0; u < d.width; ++u) {
          if (d.at(u, v) <= 0) continue;
          const auto& p = cloud.points[k++];
          const double uu = p.x * calib.focal_length / p.z + calib.cx;
          const double vv = p.y * calib.focal_length / p.z + calib.cy;
          const double dd = calib.focal_length * calib.baseline / p.z;
          auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
          if (rel(uu, u) >= 1e-9 || rel(vv, v) >= 1e-9 || rel(dd, d.at(u, v)) >= 1e-9) return false;
        }
      }
      if (k != cloud.size()) return false;
    }
    return true;
  });

  timed("in_area idempotence and subset", [] {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const Region r("box", {-0.5, -0.5, 0.5}, {test::uniform_real(rng, -0.4, 1), 0.5, test::uniform_real(rng, 0.6, 3)});
      PointCloud cloud;
      for (int j = 0; j < 1000; ++j) {
        cloud.points.push_back(
            {test::uniform_real(rng, -1, 1), test::uniform_real(rng, -1, 1), test::uniform_real(rng, 0.1, 3)});
      }
      const auto once = kernels::in_area(cloud, r);
      if (kernels::in_area(once, r) != once) return false;
      for (const auto& p : once.points) {
        if (std::find(cloud.points.begin(), cloud.points.end(), p) == cloud.points.end()) return false;
      }
    }
    return true;
  });

  timed("disparity of identical images", [] {
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
      const auto img = test::random_mono(rng, 32);
      if (img.width < 3 || img.height < 3) continue;
      const auto d = kernels::disparity(img, img, 3, uniform(rng, 0, 12));
      for (auto v : d.values) {
        if (v != DisparityImage::kInvalid && v != 0) return false;
      }
    }
    return true;
  });

  timed("latch monotonicity", [] {
    Rng rng(5);
    for (int s = 0; s < 1000; ++s) {
      PipelineDecision d;
      bool bad = false;
      for (int f = 0; f < 20; ++f) {
        std::vector<Verdict> vs;
        for (int r = 1; r <= 3; ++r) {
          const int roll = uniform(rng, 0, 29);
          const Outcome o = roll == 0 ? Outcome::Fail : roll == 1 ? Outcome::Error : Outcome::Pass;
          bad = bad || o != Outcome::Pass;
          vs.push_back(Verdict{"R" + std::to_string(r), f, o, {}, "", ""});
        }
        const bool was = d.stopped();
        d = gate(vs, d);
        if (d.stopped() != bad || (was && !d.stopped())) return false;
      }
    }
    return true;
  });
}

void standards_golden(Check& c) {
  const auto& entries = standards::SafetyFunctionTable::field_robot().entries();
  const std::vector<std::pair<std::string, std::string>> expected{
      {"Emergency Stop", "d"},
      {"Protective Stop", "e"},
      {"Limits to workspace (incl. forbidden area avoidance)", "e"},
      {"safety-related speed control", "e"},
      {"safety-related force control", "N/A"},
      {"Hazardous collision avoidance", "e"},
      {"Stability Control (incl. overload protection)", "d"},
  };
  c.expect(entries.size() == expected.size(), "row count; ");
  for (std::size_t i = 0; i < std::min(entries.size(), expected.size()); ++i) {
    c.expect(entries[i].display_name() == expected[i].first && entries[i].level == expected[i].second,
             "row " + std::to_string(i) + "; ");
  }
  const auto rules = rules::compile(test::reference_rules(), test::stereo_graph());
  const auto text = standards::coverage_report(rules, {{"R1", {"Protective Stop"}}}).to_text();
  for (const auto& [name, level] : expected) {
    c.expect(text.find(name) != std::string::npos, "report misses " + name + "; ");
  }
}

}  // namespace
}  // namespace saferules::acceptance

int main() {
  using namespace saferules::acceptance;
  criterion(1, "rule snippets tokenize, parse and resolve into 3 rules (golden AST)", 1, dsl_fidelity);
  criterion(2, "covered left lens: R1 FAIL with ratio <= 3/256 at 8 bit, stop latched at frame 0, exit 2", 5,
            covered_lens);
  criterion(3, "overexposure: R1 FAIL and exit 2", 5, overexposure);
  criterion(4, "partial cover (shipped config) passes all rules, exit 0 (known false negative)", 5,
            partial_cover_false_negative);
  criterion(5, "landmark: clean > 900 points PASS, removed FAIL, exactly 900 FAIL", 10, landmark);
  criterion(6, "100 randomized frames: engine outcomes equal independent oracle", 60, oracle_equivalence);
  criterion(7, "property suites: histogram, reprojection, in_area, disparity, latch", 30 * 5, property_suites);
  criterion(8, "standards report lists the seven field-robot functions and levels", 1, standards_golden);
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
