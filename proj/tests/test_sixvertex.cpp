#include "doctest.h"

#include <map>
#include <set>

#include "holo/sixvertex.hpp"

using namespace holo;
using namespace holo::sixv;

namespace {

// Independent oracle for small L: brute force over all spin assignments of
// the free (non-frozen) spins, filtering with is_ground_basis.  For L=4 the
// free spins are the four plaquette spins around the center plus colors.
std::vector<SixVertexConfig> brute_force_surfaces_L4() {
  std::vector<SixVertexConfig> out;
  const int L = 4;
  // frozen skeleton: alternating rows/columns
  SixVertexConfig base = SixVertexConfig::empty(L, 1);
  for (int x = 0; x < L; ++x)
    for (int y = 0; y <= L - 2; ++y) base.sh_up[x][y] = (x % 2 == 0);
  for (int x = 0; x <= L - 2; ++x)
    for (int y = 0; y < L; ++y) base.sv_up[x][y] = (y % 2 == 0);
  for (int m = 0; m < 16; ++m) {
    SixVertexConfig c = base;
    c.sh_up[1][1] = m & 1;
    c.sh_up[2][1] = m & 2;
    c.sv_up[1][1] = m & 4;
    c.sv_up[1][2] = m & 8;
    if (ice_rule_ok(c) && is_ground_basis(c)) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST_CASE("ice rule on local patterns") {
  // all-up lattice violates the rule at interior vertices
  auto c = SixVertexConfig::empty(4, 1);
  CHECK_FALSE(ice_rule_ok(c));

  // every enumerated surface satisfies it everywhere
  for (const auto& s : enumerate_surfaces(4)) CHECK(ice_rule_ok(s));
}

TEST_CASE("height field integrates consistently and volume is the dual sum") {
  auto surfaces = enumerate_surfaces(4);
  REQUIRE(surfaces.size() == 2);  // frozen boundary leaves one free plaquette
  std::set<long long> vols;
  for (const auto& s : surfaces) {
    auto f = height_field(s);
    // ring alternates 0/1
    for (int i = 0; i <= 4; ++i) {
      CHECK(f.grid[i][0] == (i % 2));
      CHECK(f.grid[0][i] == (i % 2));
    }
    vols.insert(volume(s));
  }
  // enumerated extremes for L=4: volumes 12 and 14, two height units apart
  CHECK(vols == std::set<long long>{12, 14});
}

TEST_CASE("max-volume configuration is the enumeration argmax") {
  auto surfaces = enumerate_surfaces(4);
  const SixVertexConfig* best = nullptr;
  for (const auto& s : surfaces)
    if (!best || volume(s) > volume(*best)) best = &s;
  auto f = height_field(*best);
  CHECK(f.grid[2][2] == 2);  // raised center, as in the maximal surface
  // crossing one spin changes phi by 2S
  CHECK(f.grid[1][1] - f.grid[0][1] == (best->sh_up[0][0] ? 1 : -1));
}

TEST_CASE("L=2 is fully frozen") {
  auto surfaces = enumerate_surfaces(2);
  REQUIRE(surfaces.size() == 1);
  CHECK(volume(surfaces[0]) == 2);
  CHECK(enumerate_ground_basis(2, 3).size() == 9);  // one pair per chain, two chains
}

TEST_CASE("enumerate_ground_basis matches brute force on L=4") {
  auto fast = enumerate_surfaces(4);
  auto slow = brute_force_surfaces_L4();
  std::set<std::string> a, b;
  for (auto& c : fast) a.insert(to_label(c));
  for (auto& c : slow) b.insert(to_label(c));
  CHECK(a == b);

  // colored counts: one free color per matched pair; L=4 has 12 pairs
  CHECK(enumerate_ground_basis(4, 1).size() == 2);
  CHECK(enumerate_ground_basis(4, 2).size() == 2 * (1 << 12));
}

TEST_CASE("boundary term vanishes exactly on the basis") {
  for (const auto& c : enumerate_ground_basis(4, 2))
    CHECK(boundary_term_value(c) == 0.0);
}

TEST_CASE("2d fredkin moves: volume step, ice preservation, involution") {
  auto basis = enumerate_ground_basis(4, 2);
  int applied = 0;
  for (const auto& c : basis) {
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y)
        for (int j = 1; j <= 4; ++j) {
          auto m = fredkin_move_2d(c, x, y, j);
          if (!m) continue;
          ++applied;
          CHECK(ice_rule_ok(*m));
          CHECK(std::abs(volume(*m) - volume(c)) == 2);
          CHECK(is_ground_basis(*m));
          auto back = fredkin_move_2d(*m, x, y, j);
          REQUIRE(back);
          CHECK(to_label(*back) == to_label(c));
        }
  }
  CHECK(applied > 0);
}

TEST_CASE("move graph connectivity (swaps + recolorings)") {
  CHECK(move_graph_connected(4, 1));
  CHECK(move_graph_connected(4, 2));
}

TEST_CASE("json round trip") {
  auto basis = enumerate_ground_basis(4, 2);
  const auto& c = basis[basis.size() / 2];
  auto c2 = from_json(to_json(c));
  CHECK(to_label(c2) == to_label(c));
}

TEST_CASE("cube tiling bijection round-trips on the full basis") {
  for (int s : {1, 2}) {
    auto basis = enumerate_ground_basis(4, s);
    for (const auto& c : basis) {
      auto t = tiling_from_config(c);
      // exactly one 3-arrow-class (turn) tile per tower
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y <= 2; ++y) {
          int turns = 0;
          for (int ty : t.h[x][y].types)
            if (ty == 2 || ty == 4) ++turns;
          CHECK(turns == 1);
        }
      auto c2 = config_from_tiling(t);
      CHECK(to_label(c2) == to_label(c));
    }
  }
}

TEST_CASE("local surjectivity: exactly the 6 ice patterns assemble") {
  auto rep = local_surjectivity_report(1);
  REQUIRE(rep.size() == 16);
  int ice = 0, tiled = 0;
  for (const auto& e : rep) {
    if (e.ice) ++ice;
    if (e.tiled) ++tiled;
    CHECK(e.ice == e.tiled);
  }
  CHECK(ice == 6);
  CHECK(tiled == 6);
}

TEST_CASE("network amplitudes equal enumeration (ratio test), L=4") {
  for (int s : {1, 2}) {
    auto net = build_network(4, s);
    SparseTensor amp = net.contract();
    auto basis = enumerate_ground_basis(4, s);
    REQUIRE(amp.nnz() == basis.size());  // zero off-basis

    QMonomial ref;
    long long ref_vol = 0;
    bool first = true;
    for (const auto& c : basis) {
      SparseTensor::Index idx;
      for (Symbol sym : physical_assignment(c)) idx.push_back(sym);
      QMonomial a = amp.at(idx);
      REQUIRE_FALSE(a.is_zero());
      if (first) {
        ref = a;
        ref_vol = volume(c);
        first = false;
        continue;
      }
      CHECK(a.coeff == ref.coeff);
      CHECK(a.exp12 - ref.exp12 == 12 * (volume(c) - ref_vol));
    }
  }
}

TEST_CASE("network: L=2 degenerate case contracts to a single amplitude") {
  auto net = build_network(2, 1);
  SparseTensor amp = net.contract();
  CHECK(amp.nnz() == 1);
}

TEST_CASE("annihilation of every term, L=4") {
  for (auto [s, q] : std::vector<std::pair<int, double>>{{1, 0.7}, {2, 2.0}}) {
    auto rep = verify_annihilation(4, s, q);
    CHECK(rep.max_h0 == 0.0);
    CHECK(rep.max_boundary == 0.0);
    CHECK(rep.max_residual < 1e-12);
  }
}

TEST_CASE("gauge identity holds with table weights and fails when perturbed") {
  for (double q : {0.5, 2.0})
    for (double alpha : {0.5, 1.0, 3.0}) {
      CHECK(gauge_identity_check(q, alpha));
      CHECK_FALSE(gauge_identity_check(q, alpha, /*perturb_h3=*/true));
    }
  CHECK(gauge_identity_check(2.0, 0.0));  // trivial at alpha = 0
}
