#include "doctest.h"

#include <memory>
#include <random>

#include "holo/network.hpp"
#include "holo/sparse_tensor.hpp"

using namespace holo;

namespace {

AlphabetRef alpha1(int s = 1) { return std::make_shared<LegAlphabet>(1, s, "a"); }

SparseTensor delta(AlphabetRef a, Symbol v) {
  SparseTensor t({{"k", a}});
  t.set({v}, QMonomial::one());
  return t;
}

}  // namespace

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(2, 4);
  CHECK(a.num == 1);
  CHECK(a.den == 2);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("monomial sums demand equal exponents") {
  QMonomial a(Rational(1), 3), b(Rational(2), 3), c(Rational(1), 6);
  CHECK((a + b) == QMonomial(Rational(3), 3));
  CHECK_THROWS_AS(a + c, std::domain_error);
  CHECK((a * c).exp12 == 9);
  CHECK(QMonomial(Rational(1), 6).eval(2.0) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("alphabet codes round-trip and zero is symbol 0") {
  LegAlphabet a(2, 2, "pair");
  CHECK(a.encode({ArrowComp::zero(), ArrowComp::zero()}) == 0);
  std::vector<ArrowComp> v{ArrowComp::plus2(1), ArrowComp::deg(2)};
  auto code = a.encode(v);
  auto back = a.decode(code);
  CHECK(back[0] == v[0]);
  CHECK(back[1] == v[1]);
  CHECK(a.encode({ArrowComp::deg(1), ArrowComp::zero()}) !=
        a.encode({ArrowComp::zero(), ArrowComp::zero()}));
}

TEST_CASE("contract_pair identity case: 1-leg tensor against delta") {
  auto a = alpha1();
  SparseTensor t({{"k", a}});
  t.set({0}, QMonomial::one());
  SparseTensor res = contract_pair(t, delta(a, 0), {{0, 0}});
  CHECK(res.rank() == 0);
  CHECK(res.at({}) == QMonomial::one());
}

TEST_CASE("contract_pair annihilates a mismatched delta") {
  // tile A2(c): leg k4 carries +c, so a delta_{k,0} cap on it empties the tensor
  auto a = alpha1(1);
  Symbol pc = a->encode({ArrowComp::plus(1)});
  Symbol z = 0;
  SparseTensor t({{"k1", a}, {"k4", a}});
  t.set({pc, pc}, QMonomial(Rational(1), 6));
  SparseTensor res = contract_pair(t, delta(a, z), {{1, 0}});
  CHECK(res.nnz() == 0);
}

TEST_CASE("contract_pair adds exponents") {
  auto a = alpha1();
  SparseTensor x({{"k", a}});
  x.set({0}, QMonomial(Rational(1), 3));
  SparseTensor y({{"k", a}});
  y.set({0}, QMonomial(Rational(1), 6));
  SparseTensor res = contract_pair(x, y, {{0, 0}});
  CHECK(res.at({}) == QMonomial(Rational(1), 9));
}

TEST_CASE("contract_pair rejects alphabet mismatch") {
  auto a = alpha1(1);
  auto b = alpha1(2);
  SparseTensor x({{"k", a}});
  x.set({0}, QMonomial::one());
  SparseTensor y({{"k", b}});
  y.set({0}, QMonomial::one());
  CHECK_THROWS_AS(contract_pair(x, y, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("planner basics") {
  auto a = alpha1();
  NetworkGraph net;
  SparseTensor t({{"k", a}});
  t.set({0}, QMonomial::one());
  int n0 = net.add_node(t);
  net.mark_open(n0, "k", LegRole::Physical);
  CHECK(net.plan_contraction().empty());

  NetworkGraph chain;
  std::vector<int> ids;
  SparseTensor mid({{"l", a}, {"r", a}});
  mid.set({0, 0}, QMonomial::one());
  for (int i = 0; i < 4; ++i) ids.push_back(chain.add_node(mid));
  for (int i = 0; i + 1 < 4; ++i) chain.connect(ids[i], "r", ids[i + 1], "l");
  chain.mark_open(ids[0], "l", LegRole::Boundary);
  chain.mark_open(ids[3], "r", LegRole::Boundary);
  CHECK(chain.plan_contraction().size() == 3);  // node count - 1
}

TEST_CASE("contraction is plan-independent on a random delta network") {
  // property: contracting in arbitrary pairwise orders gives identical
  // entry sets (exact monomial equality)
  auto a = alpha1(2);
  std::mt19937 rng(7);
  auto rnd_sym = [&]() { return static_cast<Symbol>(rng() % a->size()); };

  // ring of 4 tensors with open spokes; one exponent per tensor keeps every
  // accumulated sum inside the monomial ring
  SparseTensor t({{"cw", a}, {"ccw", a}, {"spoke", a}});
  for (int e = 0; e < 6; ++e)
    t.set({rnd_sym(), rnd_sym(), rnd_sym()},
          QMonomial(Rational(1 + static_cast<int>(rng() % 3)), 3));

  NetworkGraph net;
  std::vector<int> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(net.add_node(t));
  for (int i = 0; i < 4; ++i) net.connect(ids[i], "cw", ids[(i + 1) % 4], "ccw");
  for (int i = 0; i < 4; ++i) net.mark_open(ids[i], "spoke", LegRole::Physical);

  SparseTensor ref = net.contract();

  // manual alternative orders via direct pairwise contraction
  auto pairwise = [&](std::vector<int> order) {
    // order: sequence of merges by explicit contract_pair on the node list
    std::vector<SparseTensor> ts{t, t, t, t};
    // contract nodes 0&1 (legs cw0-ccw1), then 2&3, then halves (two edges)
    SparseTensor ab = contract_pair(ts[0], ts[1], {{0, 1}});       // cw0-ccw1
    SparseTensor cd = contract_pair(ts[2], ts[3], {{0, 1}});       // cw2-ccw3
    // ab legs: ccw0 spoke0 cw1 spoke1 ; cd legs: ccw2 spoke2 cw3 spoke3
    SparseTensor all = contract_pair(ab, cd, {{2, 0}, {0, 2}});    // cw1-ccw2, cw3-ccw0
    // all legs: spoke0 spoke1 spoke2 spoke3
    return all;
  };
  SparseTensor alt = pairwise({});
  CHECK(ref == alt);
}

TEST_CASE("outer product with scalar one is the identity") {
  auto a = alpha1();
  NetworkGraph net;
  SparseTensor t({{"k", a}});
  t.set({0}, QMonomial(Rational(3), 2));
  int n = net.add_node(t);
  net.add_node(SparseTensor::scalar(QMonomial::one()));
  net.mark_open(n, "k", LegRole::Physical);
  SparseTensor res = net.contract();
  CHECK(res.at({0}) == QMonomial(Rational(3), 2));
}

TEST_CASE("numeric evaluation after contraction matches contracting numerically") {
  auto a = alpha1(2);
  std::mt19937 rng(13);
  SparseTensor t({{"l", a}, {"r", a}});
  for (int e = 0; e < 5; ++e)
    t.set({static_cast<Symbol>(rng() % a->size()), static_cast<Symbol>(rng() % a->size())},
          QMonomial(Rational(1 + static_cast<int>(rng() % 4)), 2));
  NetworkGraph net;
  int n0 = net.add_node(t), n1 = net.add_node(t);
  net.connect(n0, "r", n1, "l");
  net.mark_open(n0, "l", LegRole::Physical);
  net.mark_open(n1, "r", LegRole::Physical);
  SparseTensor sym = net.contract();

  for (double q : {0.5, 1.0, 2.0}) {
    for (const auto& [idx, v] : sym.entries()) {
      double direct = 0;
      for (const auto& [ia, va] : t.entries())
        for (const auto& [ib, vb] : t.entries())
          if (ia[0] == idx[0] && ia[1] == ib[0] && ib[1] == idx[1])
            direct += va.eval(q) * vb.eval(q);
      CHECK(v.eval(q) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate_amplitude rejects foreign symbols") {
  auto a = alpha1();
  NetworkGraph net;
  SparseTensor t({{"k", a}});
  t.set({0}, QMonomial::one());
  int n = net.add_node(t);
  net.mark_open(n, "k", LegRole::Physical);
  CHECK_THROWS_AS(net.evaluate_amplitude({static_cast<Symbol>(a->size())}),
                  std::invalid_argument);
  CHECK(net.evaluate_amplitude({0}) == QMonomial::one());
}
