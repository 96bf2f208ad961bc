#include "doctest.h"

#include <cmath>

#include "holo/statevec.hpp"

using namespace holo;

namespace {

std::pair<BasisLabel, BasisLabel> half_split(const BasisLabel& k) {
  // splits a space-separated token label in two halves
  int tokens = 1;
  for (char c : k)
    if (c == ' ') ++tokens;
  int cut = tokens / 2, seen = 0;
  std::size_t pos = 0;
  for (; pos < k.size(); ++pos) {
    if (k[pos] == ' ' && ++seen == cut) break;
  }
  return {k.substr(0, pos), k.substr(std::min(pos + 1, k.size()))};
}

}  // namespace

TEST_CASE("normalize uniform pair") {
  WeightedState s;
  s.terms["U1 U1 D1 D1"] = 1.0;
  s.terms["U1 D1 U1 D1"] = 1.0;
  auto n = normalize(s);
  for (auto& [k, v] : n.terms) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("normalize N=4 s=1 q=2 amplitudes") {
  // areas 4 and 2 -> unnormalized {q^4, q^2} = {16, 4}; oracle is direct
  // arithmetic: norm = sqrt(16^2 + 4^2) = sqrt(272)
  WeightedState s;
  s.terms["U1 U1 D1 D1"] = 16.0;
  s.terms["U1 D1 U1 D1"] = 4.0;
  auto n = normalize(s);
  CHECK(n.terms["U1 U1 D1 D1"] == doctest::Approx(16.0 / std::sqrt(272.0)));
  CHECK(n.terms["U1 D1 U1 D1"] == doctest::Approx(4.0 / std::sqrt(272.0)));
}

TEST_CASE("normalize is idempotent and rejects the zero state") {
  WeightedState s;
  s.terms["a"] = 0.6;
  s.terms["b"] = 0.8;
  auto n1 = normalize(s);
  auto n2 = normalize(n1);
  for (auto& [k, v] : n2.terms) CHECK(v == doctest::Approx(n1.terms[k]).epsilon(1e-15));
  WeightedState z;
  CHECK_THROWS_AS(normalize(z), std::domain_error);
}

TEST_CASE("schmidt spectrum of N=4 s=1 q=1 half cut") {
  // Oracle: 2x2 matrix by hand over left parts {U1 U1, U1 D1}:
  // M = [[1,0],[0,1]]/sqrt(2) -> p = {1/2, 1/2}, EE = ln 2
  WeightedState s;
  s.terms["U1 U1 D1 D1"] = 1.0 / std::sqrt(2.0);
  s.terms["U1 D1 U1 D1"] = 1.0 / std::sqrt(2.0);
  auto spec = schmidt_spectrum(s, half_split);
  REQUIRE(spec.coefficients.size() == 2);
  CHECK(spec.coefficients[0].second == doctest::Approx(0.5));
  CHECK(spec.coefficients[1].second == doctest::Approx(0.5));
  CHECK(spec.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.entropy() == doctest::Approx(std::log(2.0)));
}

TEST_CASE("schmidt spectrum of a product state is {1}") {
  WeightedState s;
  s.terms["a x"] = 0.5;
  s.terms["a y"] = 0.5;
  s.terms["b x"] = 0.5;
  s.terms["b y"] = 0.5;
  auto spec = schmidt_spectrum(s, half_split);
  REQUIRE(spec.coefficients.size() == 1);
  CHECK(spec.coefficients[0].second == doctest::Approx(1.0));
  CHECK(spec.entropy() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("schmidt spectrum detects a non-injective splitter") {
  WeightedState s;
  s.terms["a x"] = 0.6;
  s.terms["a  x"] = 0.8;  // same split image, different amplitude
  auto bad = [](const BasisLabel&) { return std::make_pair(BasisLabel("l"), BasisLabel("r")); };
  CHECK_THROWS_AS(schmidt_spectrum(s, bad), std::invalid_argument);
}

TEST_CASE("schmidt spectrum is invariant under key relabeling") {
  WeightedState s;
  s.terms["a x"] = 0.2;
  s.terms["a y"] = 0.4;
  s.terms["b x"] = 0.7;
  s.terms["b y"] = 0.1;
  auto spec1 = schmidt_spectrum(normalize(s), half_split);
  WeightedState t;  // permute labels
  t.terms["q x"] = 0.2;
  t.terms["q y"] = 0.4;
  t.terms["c x"] = 0.7;
  t.terms["c y"] = 0.1;
  auto spec2 = schmidt_spectrum(normalize(t), half_split);
  REQUIRE(spec1.coefficients.size() == spec2.coefficients.size());
  for (std::size_t i = 0; i < spec1.coefficients.size(); ++i)
    CHECK(spec1.coefficients[i].second ==
          doctest::Approx(spec2.coefficients[i].second).epsilon(1e-12));
}

TEST_CASE("apply_local_operator identity") {
  WeightedState s;
  s.terms["a"] = 0.3;
  s.terms["b"] = -0.7;
  auto out = apply_local_operator(s, [](const BasisLabel& k) {
    return std::vector<std::pair<BasisLabel, double>>{{k, 1.0}};
  });
  CHECK(out.terms == s.terms);
}
