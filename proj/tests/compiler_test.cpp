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

#include <gtest/gtest.h>

#include "saferules/error.hpp"
#include "saferules/rules/compiler.hpp"
#include "saferules/rules/parser.hpp"
#include "test_support.hpp"

namespace saferules::rules {
namespace {

const PlanNode& node(const CompiledRuleSet& c, std::size_t i) { return c.nodes.at(i); }

TEST(Compiler, ReferenceRulesGiveThreeRules) {
  const auto compiled = compile(test::reference_rules(), test::stereo_graph());
  ASSERT_EQ(compiled.rules.size(), 3u);
  EXPECT_EQ(compiled.rules[0].id, "R1");
  EXPECT_EQ(compiled.rules[1].id, "R2");
  EXPECT_EQ(compiled.rules[2].id, "R3");
  EXPECT_NO_THROW(compiled.validate(test::stereo_graph()));

  // R1: ratio of two counts against a dimensionless constant.
  const auto& r1 = node(compiled, compiled.rules[0].root);
  EXPECT_EQ(r1.op, PlanOp::Greater);
  EXPECT_EQ(node(compiled, r1.inputs[0]).op, PlanOp::Div);
  EXPECT_EQ(node(compiled, r1.inputs[0]).type, SemanticType::scalar(Dimension::Ratio));
  EXPECT_EQ(node(compiled, r1.inputs[1]).constant, Rational(1, 10));

  // R2: a level spread against a pixel constant.
  const auto& r2 = node(compiled, compiled.rules[1].root);
  EXPECT_EQ(node(compiled, r2.inputs[0]).op, PlanOp::Sub);
  EXPECT_EQ(node(compiled, r2.inputs[0]).type, SemanticType::scalar(Dimension::Level));
  EXPECT_EQ(node(compiled, r2.inputs[1]).type, SemanticType::scalar(Dimension::Pixel));

  // R3: a count of points inside the landmark region.
  const auto& r3 = node(compiled, compiled.rules[2].root);
  const auto& length = node(compiled, r3.inputs[0]);
  EXPECT_EQ(length.op, PlanOp::Length);
  const auto& in_area = node(compiled, length.inputs[0]);
  EXPECT_EQ(in_area.op, PlanOp::InArea);
  EXPECT_EQ(node(compiled, in_area.inputs[0]).tap, (Endpoint{"PointCloud_3D", "output"}));
  EXPECT_EQ(node(compiled, in_area.inputs[1]).region, "Camera_Left_Landmark");
  EXPECT_EQ(node(compiled, r3.inputs[1]).constant, Rational(900));
}

TEST(Compiler, AssignmentIsSharedAcrossRules) {
  const auto compiled = compile(test::kHistogramSnippet, test::stereo_graph());
  int histograms = 0;
  int taps = 0;
  for (const auto& n : compiled.nodes) {
    histograms += n.op == PlanOp::Histogram;
    taps += n.op == PlanOp::Tap;
  }
  EXPECT_EQ(histograms, 1);
  EXPECT_EQ(taps, 1);
}

TEST(Compiler, PlanIsTopologicallyOrdered) {
  const auto compiled = compile(test::reference_rules(), test::stereo_graph());
  for (std::size_t i = 0; i < compiled.nodes.size(); ++i) {
    for (auto in : compiled.nodes[i].inputs) EXPECT_LT(in, i);
  }
}

TEST(Compiler, LabelsAndSourceMap) {
  const auto compiled = compile(test::reference_rules(), test::stereo_graph());
  EXPECT_EQ(compiled.rules[0].lhs_label, "length(nonempty(h.bins))/length(h.bins)");
  EXPECT_EQ(compiled.rules[0].rhs_label, "0.1");
  EXPECT_EQ(compiled.rules[2].text, "length(PointCloud_3D.output.inArea(Camera_Left_Landmark))>900;");
  const auto map = compiled.source_map();
  ASSERT_EQ(map.size(), 3u);
  EXPECT_EQ(map.at("R1").begin.line, 2u);
  EXPECT_EQ(map.at("R3").begin.line, 4u);
  EXPECT_EQ(map.at("R3").end.line, 5u);
}

TEST(Compiler, DeterministicResolution) {
  const auto rs = parse_source(test::reference_rules());
  const auto a = resolve(rs, test::stereo_graph());
  const auto b = resolve(rs, test::stereo_graph());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Compiler, UnknownIdentifier) {
  try {
    compile("length(Nonexistent.output)>1;", test::stereo_graph());
    FAIL() << "expected UnknownIdentifier";
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.identifier(), "Nonexistent");
    EXPECT_EQ(e.position().column, 8u);
  }
}

TEST(Compiler, UnknownBuiltin) {
  EXPECT_THROW(compile("frobnicate(Bayer2Mono_Left.output)>1;", test::stereo_graph()), UnknownIdentifier);
}

TEST(Compiler, UnregisteredRegion) {
  EXPECT_THROW(compile(test::kLandmarkSnippet, build_stereo_pipeline({})), UnknownIdentifier);
}

TEST(Compiler, ImageIsNotComparable) {
  EXPECT_THROW(compile("Bayer2Mono_Left.output > 3;", test::stereo_graph()), TypeMismatch);
}

TEST(Compiler, AssertMustBeBoolean) {
  EXPECT_THROW(compile("length(Bayer2Mono_Left.output.histogram.bins);", test::stereo_graph()), TypeMismatch);
}

TEST(Compiler, RatioDoesNotUnifyWithCount) {
  EXPECT_THROW(compile("h=Bayer2Mono_Left.output.histogram;length(h.bins)/length(h.bins)>length(h.bins);",
                       test::stereo_graph()),
               TypeMismatch);
}

TEST(Compiler, CountDoesNotUnifyWithLevel) {
  EXPECT_THROW(compile("h=Bayer2Mono_Left.output.histogram;max(h)>length(h.bins);", test::stereo_graph()),
               TypeMismatch);
}

TEST(Compiler, PixelUnifiesWithCountAndLevel) {
  EXPECT_NO_THROW(compile("h=Bayer2Mono_Left.output.histogram;max(h)>5p;length(h.bins)>5p;", test::stereo_graph()));
}

TEST(Compiler, HistogramOfRawCamera) {
  const auto compiled = compile("length(nonempty(Camera_Left.output.histogram.bins))>3;", test::stereo_graph());
  EXPECT_EQ(compiled.nodes.front().tap, (Endpoint{"Camera_Left", "output"}));
}

TEST(Compiler, BareComponentIsNotAValue) {
  EXPECT_THROW(compile("length(PointCloud_3D)>1;", test::stereo_graph()), TypeMismatch);
}

TEST(Compiler, InAreaNeedsRegion) {
  EXPECT_THROW(compile("length(PointCloud_3D.output.inArea(PointCloud_3D.output))>1;", test::stereo_graph()),
               TypeMismatch);
}

TEST(Compiler, WrongArity) {
  EXPECT_THROW(compile("length(PointCloud_3D.output, PointCloud_3D.output)>1;", test::stereo_graph()), TypeMismatch);
}

TEST(Compiler, AmbiguousOutput) {
  const auto base = build_stereo_pipeline({});
  auto components = base.components();
  components[2].outputs.push_back({"preview", PortType::MonoImage});
  const PipelineGraph graph(components, base.connectors(), {});
  EXPECT_THROW(compile("h=Bayer2Mono_Left.output.histogram;max(h)>3;", graph), AmbiguousOutput);
  // Naming the port directly is unambiguous.
  EXPECT_NO_THROW(compile("h=Bayer2Mono_Left.preview.histogram;max(h)>3;", graph));
}

TEST(Compiler, EmptyRuleSet) { EXPECT_TRUE(compile("", test::stereo_graph()).rules.empty()); }

// Every TypeMismatch points inside the statement that caused it.
TEST(CompilerProperty, TypeMismatchPositionsInsideStatement) {
  const std::vector<std::string> bad{
      "Bayer2Mono_Left.output > 3;",
      "h=Bayer2Mono_Left.output.histogram;\nlength(h)>1;",
      "h=Bayer2Mono_Left.output.histogram;\n\n  max(h)>length(h.bins);",
      "x=1;\ny=PointCloud_3D.output;\n   y.inArea(x)>2;",
      "length(nonempty(PointCloud_3D.output))>1;",
      "a=PointCloud_3D.output;\n\tlength(a)/length(a)>length(a);",
      "h=Bayer2Mono_Left.output.histogram;\nh.bins>0;",
      "h=Bayer2Mono_Left.output.histogram;\nmax(h)+length(h.bins.nonempty)>0;",
  };
  for (const auto& src : bad) {
    const auto rs = parse_source(src);
    try {
      resolve(rs, test::stereo_graph());
      ADD_FAILURE() << "expected TypeMismatch for " << src;
    } catch (const TypeMismatch& e) {
      bool inside = false;
      for (const auto& s : rs.statements) {
        inside = inside || (e.position().offset >= s.span.begin.offset && e.position().offset < s.span.end.offset);
      }
      EXPECT_TRUE(inside) << src << " -> " << e.what();
    }
  }
}

TEST(Types, UnifyTable) {
  using D = Dimension;
  EXPECT_EQ(unify(D::Pixel, D::Count), D::Count);
  EXPECT_EQ(unify(D::Level, D::Pixel), D::Level);
  EXPECT_EQ(unify(D::Ratio, D::None), D::Ratio);
  EXPECT_EQ(unify(D::Ratio, D::Ratio), D::Ratio);
  EXPECT_FALSE(unify(D::Ratio, D::Count).has_value());
  EXPECT_FALSE(unify(D::Ratio, D::Pixel).has_value());
  EXPECT_FALSE(unify(D::Count, D::Level).has_value());
}

}  // namespace
}  // namespace saferules::rules
