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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "saferules/cli.hpp"
#include "saferules/config.hpp"
#include "saferules/error.hpp"
#include "saferules/faults.hpp"
#include "saferules/kernels.hpp"
#include "saferules/monitor.hpp"
#include "saferules/rational.hpp"
#include "saferules/rules/compiler.hpp"
#include "saferules/rules/lexer.hpp"
#include "saferules/rules/parser.hpp"
#include "saferules/standards.hpp"

namespace py = pybind11;
using namespace saferules;

namespace {

using Samples = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>;

template <typename Image>
py::array_t<std::uint16_t> to_array(const Image& img) {
  py::array_t<std::uint16_t> out({img.height, img.width});
  std::copy(img.samples.begin(), img.samples.end(), out.mutable_data());
  return out;
}

void fill_from(Samples a, int& width, int& height, std::vector<std::uint16_t>& samples) {
  if (a.ndim() != 2) throw InvalidArgument("expected a 2-D array");
  height = static_cast<int>(a.shape(0));
  width = static_cast<int>(a.shape(1));
  samples.assign(a.data(), a.data() + a.size());
}

RawImage raw_from(Samples a, int bit_depth, const std::string& pattern) {
  RawImage img;
  fill_from(a, img.width, img.height, img.samples);
  img.bit_depth = bit_depth;
  img.pattern = parse_bayer_pattern(pattern);
  img.validate();
  return img;
}

MonoImage mono_from(Samples a, int bit_depth) {
  MonoImage img;
  fill_from(a, img.width, img.height, img.samples);
  img.bit_depth = bit_depth;
  img.validate();
  return img;
}

py::tuple position(const SourcePosition& p) { return py::make_tuple(p.line, p.column, p.offset); }

py::dict verdict_dict(const Verdict& v) {
  py::list operands;
  for (const auto& op : v.evaluated) operands.append(py::make_tuple(op.label, format_rational(op.value)));
  py::dict d;
  d["rule_id"] = v.rule_id;
  d["frame_id"] = v.frame_id;
  d["outcome"] = std::string(to_string(v.outcome));
  d["evaluated"] = operands;
  d["message"] = v.message;
  d["error"] = v.error;
  return d;
}

// The pipeline and the rules it was compiled against, kept together.
struct Monitor {
  config::PipelineConfig pipeline;
  rules::CompiledRuleSet rules;
  PipelineDecision decision;

  py::list step(const StereoPair& pair, std::int64_t frame_id) {
    std::vector<Verdict> verdicts;
    {
      py::gil_scoped_release release;
      verdicts = evaluate(rules, run_frame(pipeline.graph, pair.left, pair.right, frame_id));
      decision = gate(verdicts, decision);
    }
    py::list out;
    for (const auto& v : verdicts) out.append(verdict_dict(v));
    return out;
  }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Declarative safety rules for a stereo camera pipeline";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.name(), e.what()).ptr());
    }
  });

  m.def("tokenize", [](const std::string& source) {
    py::list out;
    for (const auto& t : rules::tokenize(source))
      out.append(py::make_tuple(std::string(rules::to_string(t.kind)), t.lexeme, position(t.position)));
    return out;
  });
  m.def("parse_dump", [](const std::string& source) { return rules::dump(rules::parse_source(source)); },
        "S-expression form of the parsed rules.");
  m.def("canonical", [](const std::string& source) { return rules::print(rules::parse_source(source)); },
        "Canonical text of the parsed rules.");

  py::class_<RawImage>(m, "RawImage")
      .def(py::init(&raw_from), py::arg("samples"), py::arg("bit_depth"), py::arg("pattern") = "RGGB")
      .def_readonly("width", &RawImage::width)
      .def_readonly("height", &RawImage::height)
      .def_readonly("bit_depth", &RawImage::bit_depth)
      .def_property_readonly("pattern", [](const RawImage& r) { return std::string(to_string(r.pattern)); })
      .def("to_numpy", &to_array<RawImage>);

  py::class_<MonoImage>(m, "MonoImage")
      .def(py::init(&mono_from), py::arg("samples"), py::arg("bit_depth"))
      .def_readonly("width", &MonoImage::width)
      .def_readonly("height", &MonoImage::height)
      .def_readonly("bit_depth", &MonoImage::bit_depth)
      .def("to_numpy", &to_array<MonoImage>);

  m.def("debayer", &kernels::debayer_to_mono);
  m.def("histogram", [](const MonoImage& img) { return kernels::histogram(img).counts; });

  py::class_<StereoPair>(m, "StereoPair")
      .def(py::init<RawImage, RawImage>(), py::arg("left"), py::arg("right"))
      .def_readonly("left", &StereoPair::left)
      .def_readonly("right", &StereoPair::right);

  py::class_<config::SyntheticConfig>(m, "Scene")
      .def_property_readonly("frames", [](const config::SyntheticConfig& c) { return c.frames.value_or(1); })
      .def_property_readonly("faults", [](const config::SyntheticConfig& c) {
        std::vector<std::string> out;
        for (const auto& f : c.faults)
          out.push_back(std::string(to_string(f.kind)) + ":" + (f.target == CameraSide::Left ? "left" : "right"));
        return out;
      })
      .def("render", [](const config::SyntheticConfig& c, std::uint64_t frame, bool with_faults) {
        auto pair = render_scene(c.scene, frame);
        return with_faults ? apply_faults(std::move(pair), c.faults) : pair;
      }, py::arg("frame") = 0, py::arg("with_faults") = true);

  m.def("inject", [](const StereoPair& pair, const std::vector<std::string>& specs) {
    std::vector<FaultSpec> faults;
    for (const auto& s : specs) faults.push_back(parse_fault(s));
    return apply_faults(pair, faults);
  }, py::arg("pair"), py::arg("faults"), "Apply faults written as KIND:SIDE[:FRACTION].");

  py::class_<Monitor>(m, "Monitor")
      .def(py::init([](const std::filesystem::path& rules_path, const std::filesystem::path& pipeline_path) {
             Monitor mon{config::load_pipeline_config(pipeline_path), {}, {}};
             std::ifstream is(rules_path);
             if (!is) throw IoError("cannot read " + rules_path.string());
             std::ostringstream ss;
             ss << is.rdbuf();
             mon.rules = rules::compile(ss.str(), mon.pipeline.graph);
             return mon;
           }),
           py::arg("rules"), py::arg("pipeline"))
      .def_property_readonly("rule_ids", [](const Monitor& mon) {
        std::vector<std::string> ids;
        for (const auto& r : mon.rules.rules) ids.push_back(r.id);
        return ids;
      })
      .def("plan", [](const Monitor& mon) { return mon.rules.dump(); })
      .def("load_scene", [](const Monitor& mon, const std::filesystem::path& path) {
        return config::load_synthetic_config(path, mon.pipeline.graph.calibration());
      })
      .def("step", &Monitor::step, py::arg("pair"), py::arg("frame_id") = 0,
           "Run one frame, evaluate every rule and update the gate.")
      .def_property_readonly("state", [](const Monitor& mon) { return std::string(to_string(mon.decision.state)); })
      .def_property_readonly("tripped_by", [](const Monitor& mon) {
        std::vector<std::pair<std::int64_t, std::string>> out;
        for (const auto& t : mon.decision.tripped_by) out.emplace_back(t.frame_id, t.rule_id);
        return out;
      })
      .def("reset", [](Monitor& mon) { mon.decision = reset(mon.decision); })
      .def("coverage_text", [](const Monitor& mon) {
        return standards::coverage_report(mon.rules, mon.pipeline.mapping).to_text();
      })
      .def("coverage_records", [](const Monitor& mon) {
        return standards::coverage_report(mon.rules, mon.pipeline.mapping).to_records();
      });

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Run the command line tool in-process; returns (exit_code, stdout, stderr).");
}
