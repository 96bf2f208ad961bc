#include "doctest.h"

#include <Eigen/Dense>

#include <set>

#include "holo/fredkin1d.hpp"

using namespace holo;
using namespace holo::fredkin;

namespace {

// Independent oracle: brute force over all (2s)^N colored sign patterns.
std::vector<SpinChain> brute_force_basis(int N, int s) {
  std::vector<SpinChain> out;
  std::uint64_t dim = 1;
  for (int i = 0; i < N; ++i) dim *= 2 * s;
  for (std::uint64_t k = 0; k < dim; ++k) {
    SpinChain c = chain_from_index(k, N, s);
    if (is_ground_basis(c)) out.push_back(c);
  }
  return out;
}

long long oracle_area(const SpinChain& c) {
  // trapezoid sum computed independently of height_profile internals
  long long h = 0, twice = 0;
  for (const auto& sp : c.spins) {
    long long next = h + (sp.up ? 1 : -1);
    twice += h + next;
    h = next;
  }
  return twice / 2;
}

}  // namespace

TEST_CASE("height profiles and areas") {
  auto p1 = height_profile(from_label("U1 U1 D1 D1", 1));
  CHECK(p1.heights == std::vector<int>{0, 1, 2, 1, 0});
  CHECK(p1.area == 4);
  CHECK(p1.dyck);

  auto p2 = height_profile(from_label("U1 D1 U1 D1", 1));
  CHECK(p2.heights == std::vector<int>{0, 1, 0, 1, 0});
  CHECK(p2.area == 2);

  auto p3 = height_profile(from_label("U1 D1", 1));
  CHECK(p3.area == 1);

  auto p4 = height_profile(from_label("D1 U1 U1 D1", 1));
  CHECK_FALSE(p4.dyck);
}

TEST_CASE("ground basis membership: color matching rule") {
  CHECK(is_ground_basis(from_label("U1 U2 D2 D1", 2)));
  CHECK_FALSE(is_ground_basis(from_label("U1 U2 D1 D2", 2)));  // cross-matched
  CHECK_FALSE(is_ground_basis(from_label("D1 U1", 2)));        // non-Dyck
}

TEST_CASE("enumerate_ground_basis counts and equals brute force") {
  CHECK(enumerate_ground_basis(4, 1).size() == 2);
  CHECK(enumerate_ground_basis(4, 2).size() == 8);
  CHECK(enumerate_ground_basis(2, 3).size() == 3);

  for (auto [N, s] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {6, 2}}) {
    auto fast = enumerate_ground_basis(N, s);
    auto slow = brute_force_basis(N, s);
    std::set<std::string> a, b;
    for (auto& c : fast) a.insert(to_label(c));
    for (auto& c : slow) b.insert(to_label(c));
    CHECK(a == b);
  }
}

TEST_CASE("ground state amplitudes") {
  // N=2: uniform over s terms
  auto st2 = ground_state(2, 3, 1.7);
  CHECK(st2.terms.size() == 3);
  for (auto& [k, v] : st2.terms) CHECK(v == doctest::Approx(1.0 / std::sqrt(3.0)));

  // N=4, s=1, q=2: amplitudes proportional to {16, 4}
  auto st4 = ground_state(4, 1, 2.0);
  CHECK(st4.terms["U1 U1 D1 D1"] / st4.terms["U1 D1 U1 D1"] == doctest::Approx(4.0));

  // q=1: uniform
  auto stq1 = ground_state(4, 1, 1.0);
  for (auto& [k, v] : stq1.terms) CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("fredkin moves") {
  auto moved = fredkin_move(from_label("U1 U2 D2 D1", 2), 1, 1);
  REQUIRE(moved);
  CHECK(to_label(*moved) == "U2 D2 U1 D1");

  CHECK_FALSE(fredkin_move(from_label("D1 D1 D1 D1", 1), 1, 1));

  // round trip: moves are involutions on matched patterns
  for (auto& c : enumerate_ground_basis(6, 2)) {
    for (int i = 1; i + 1 < 6; ++i) {
      for (int variant : {1, 2}) {
        auto m = fredkin_move(c, i, variant);
        if (!m) continue;
        auto back = fredkin_move(*m, i, variant);
        REQUIRE(back);
        CHECK(to_label(*back) == to_label(c));
        // moves preserve membership and change area by exactly 2
        CHECK(is_ground_basis(*m));
        CHECK(std::abs(oracle_area(*m) - oracle_area(c)) == 2);
      }
    }
  }
}

TEST_CASE("move graph connected for desk-scale sizes") {
  CHECK(move_graph_connected(4, 1));
  CHECK(move_graph_connected(6, 2));
  CHECK(move_graph_connected(8, 1));
}

TEST_CASE("hamiltonian kernels at small sizes") {
  // N=2, s=1, q=1: kernel spanned by |UD>
  auto H2 = build_hamiltonian(2, 1, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2{Eigen::MatrixXd(H2)};
  int zero2 = 0;
  for (int i = 0; i < es2.eigenvalues().size(); ++i)
    if (std::abs(es2.eigenvalues()(i)) < 1e-12) ++zero2;
  CHECK(zero2 == 1);

  // N=4, s=1, q=1: unique kernel, positive gap
  auto H4 = build_hamiltonian(4, 1, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es4{Eigen::MatrixXd(H4)};
  CHECK(es4.eigenvalues()(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(es4.eigenvalues()(1)) > 1e-8);

  // N=4, s=2, q=2: ground vector matches ground_state after phase fixing
  auto H = build_hamiltonian(4, 2, 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(H)};
  CHECK(std::abs(es.eigenvalues()(0)) < 1e-10);
  auto vec = es.eigenvectors().col(0);
  auto gs = ground_state(4, 2, 2.0);
  // overlap |<v|GS>| must be 1
  double dot = 0;
  for (auto& [k, v] : gs.terms) dot += v * vec(static_cast<int>(basis_index(from_label(k, 2))));
  CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("hamiltonian respects the dimension cap") {
  CHECK_THROWS_AS(build_hamiltonian(24, 2, 1.0), std::invalid_argument);
}

TEST_CASE("network geometry: tower heights") {
  auto net = build_network(4, 1);
  // towers min(i+1, N-i) = [1,2,2,1] -> 6 tile nodes; the rest are caps
  int tiles = 0;
  for (int i = 0; i < net.node_count(); ++i)
    if (net.placement(i) != "cap") ++tiles;
  CHECK(tiles == 6);
  int physical = 0;
  for (auto& o : net.open_legs())
    if (o.role == LegRole::Physical) ++physical;
  CHECK(physical == 4);
}

TEST_CASE("network amplitudes match enumeration exactly (ratio test)") {
  for (auto [N, s] : std::vector<std::pair<int, int>>{{2, 1}, {4, 1}, {4, 2}, {6, 2}}) {
    auto net = build_network(N, s);
    SparseTensor amp = net.contract();
    auto basis = enumerate_ground_basis(N, s);

    // off-basis assignments must be exactly zero; count nonzero entries
    CHECK(amp.nnz() == basis.size());

    // amplitude(w) / amplitude(w') = q^(A(w)-A(w')) as exact monomials
    auto sym_index = [&](const SpinChain& c) {
      SparseTensor::Index idx;
      for (auto& sp : c.spins) idx.push_back(physical_symbol(sp, s));
      return idx;
    };
    const auto& ref = basis[0];
    QMonomial ref_amp = amp.at(sym_index(ref));
    REQUIRE_FALSE(ref_amp.is_zero());
    long long ref_area = oracle_area(ref);
    for (const auto& c : basis) {
      QMonomial a = amp.at(sym_index(c));
      REQUIRE_FALSE(a.is_zero());
      CHECK(a.coeff == ref_amp.coeff);
      CHECK(a.exp12 - ref_amp.exp12 == 12 * (oracle_area(c) - ref_area));
    }
  }
}

TEST_CASE("annihilation by every hamiltonian term") {
  for (auto [N, s, q] : std::vector<std::tuple<int, int, double>>{
           {6, 2, 2.0}, {8, 1, 1.0}, {6, 1, 0.5}}) {
    auto rep = verify_annihilation(N, s, q);
    CHECK(rep.max_residual < 1e-12);
    CHECK(rep.terms_checked > 0);
  }
}
