// Copyright 2026 The bellq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bellq/io.hpp"

using namespace bellq;
using bellq::io::json;

TEST(StateJson, TermsAndAmplitudes) {
    const StateVector a = io::state_from_json(json::parse(R"({"n":2,"terms":[{"bits":"00","re":1},{"bits":"11","re":1}]})"));
    const StateVector b = io::state_from_json(json::parse(
        R"({"n":2,"amplitudes":[{"re":1,"im":0},{"re":0,"im":0},{"re":0,"im":0},{"re":1,"im":0}]})"));
    EXPECT_LE((a.amplitudes() - b.amplitudes()).norm(), 1e-15);
    const StateVector c = io::state_from_json(json::parse(R"({"n":1,"terms":[{"bits":"1","im":2}]})"));
    EXPECT_NEAR(c[1].imag(), 1.0, 1e-15);
}

TEST(StateJson, RoundTripIsExact) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const StateVector s = random_state(4, seed);
        const StateVector t = io::state_from_json(json::parse(io::state_to_json(s).dump()));
        EXPECT_EQ(s.amplitudes(), t.amplitudes());
        EXPECT_EQ(lemma_bound(s), lemma_bound(t));
    }
}

TEST(StateJson, Errors) {
    EXPECT_THROW(io::state_from_json(json::parse(R"({"terms":[]})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":"two","terms":[]})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"terms":{}})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"terms":[{"bits":"00","re":"x"}]})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"terms":[{"re":1}]})")), ParseError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"terms":[]})")), ZeroStateError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"terms":[{"bits":"0","re":1}]})")), ShapeError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":2,"amplitudes":[{"re":1}]})")), ShapeError);
    EXPECT_THROW(io::state_from_json(json::parse(R"({"n":20,"terms":[{"bits":"00000000000000000000","re":1}]})")),
                 SizeLimitError);
}

TEST(SettingsJson, RoundTrip) {
    Rng rng(2);
    const BellSettings r = detail::random_restricted(3, rng);
    const BellSettings r2 = io::settings_from_json(io::settings_to_json(r));
    const StateVector s = random_state(3, 1);
    EXPECT_EQ(expectation_restricted(s, r), expectation_restricted(s, r2));
    const FullBellSettings f = detail::random_full(4, rng);
    const FullBellSettings f2 = io::full_settings_from_json(io::full_settings_to_json(f));
    const StateVector t = random_state(4, 1);
    EXPECT_EQ(expectation_full(t, f), expectation_full(t, f2));
}

TEST(SettingsJson, RejectsNonUnitVectors) {
    json j = io::settings_to_json(detail::random_restricted(2, *std::make_unique<Rng>(1)));
    j["b"] = json::array({1.0, 1.0, 0.0});
    EXPECT_THROW(io::settings_from_json(j), Error);
}

TEST(FamilySpecJson, RoundTripAndOptionalFields) {
    FamilySpec spec;
    spec.n = 5;
    spec.alpha = 3;
    spec.u_bits = "10";
    spec.v_bits = "01";
    spec.lambda_plus = 0.3;
    spec.phase_minus = Complex(0.0, -1.0);
    const FamilySpec back = io::family_spec_from_json(io::family_spec_to_json(spec));
    EXPECT_EQ(back.u_bits, spec.u_bits);
    EXPECT_EQ(back.phase_minus, spec.phase_minus);
    EXPECT_EQ(back.lambda_plus, spec.lambda_plus);
    const FamilySpec minimal = io::family_spec_from_json(json::parse(R"({"n":2,"alpha":2,"v_bits":"1","lambda_plus":0.5})"));
    EXPECT_EQ(minimal.u_bits, "");
    EXPECT_THROW(io::family_spec_from_json(json::parse(R"({"n":2,"alpha":2,"lambda_plus":0.5})")), ParseError);
    EXPECT_THROW(io::family_spec_from_json(json::parse(R"({"n":2,"alpha":3,"v_bits":"11","lambda_plus":0.5})")), ShapeError);
}

TEST(SweepJson, BareListAndObject) {
    const auto list = io::sweep_from_json(json::parse(R"([{"n":2,"alpha":2,"v_bits":"1","lambda_plus":0.5}])"));
    EXPECT_EQ(list.specs.size(), 1U);
    EXPECT_FALSE(list.optimizer.has_value());
    const auto obj = io::sweep_from_json(json::parse(
        R"({"optimizer":{"starts":3,"seed":9,"theorem_tol":0.01},"specs":[{"n":2,"alpha":2,"v_bits":"1","lambda_plus":0.5}]})"));
    ASSERT_TRUE(obj.optimizer.has_value());
    TheoremConfig cfg;
    io::apply_config(*obj.optimizer, cfg);
    EXPECT_EQ(cfg.optimizer.starts, 3);
    EXPECT_EQ(cfg.optimizer.seed, 9U);
    EXPECT_EQ(cfg.theorem_tol, 0.01);
    EXPECT_THROW(io::sweep_from_json(json::parse(R"({"specs":3})")), ParseError);
    EXPECT_THROW(io::apply_config(json::parse(R"({"seed":-1})"), cfg), ParseError);
}

TEST(ReportJson, Fields) {
    FamilySpec spec;
    spec.lambda_plus = 0.6;
    TheoremConfig cfg;
    cfg.optimizer.starts = 4;
    const json j = io::report_to_json(verify(spec, cfg));
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("branch").get<std::string>(), "even-below");
    EXPECT_EQ(j.at("spectrum").size(), 3U);
    const json w = io::wen_report_to_json(wen_report(1.0 / std::numbers::sqrt2));
    EXPECT_NEAR(w.at("s_tee").get<double>(), std::numbers::ln2, 1e-12);
    EXPECT_NEAR(w.at("quantum_dimension").get<double>(), 4.0, 1e-10);
    EXPECT_EQ(w.at("entropies").size(), 2U);
}

TEST(TensorJson, Shape) {
    const json j = io::tensor_to_json(correlation_tensor(random_state(3, 1)));
    EXPECT_EQ(j.at("rows").get<int>(), 9);
    EXPECT_EQ(j.at("entries").size(), 9U);
    EXPECT_EQ(j.at("entries")[0].size(), 3U);
}
