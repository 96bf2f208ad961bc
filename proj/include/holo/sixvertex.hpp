#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holo/network.hpp"
#include "holo/statevec.hpp"

namespace holo::sixv {

/// Spin configuration on the L x L vertex lattice.  Horizontal spins sit on
/// vertical edges (x in [0,L-1], y in [0,L-2]), vertical spins on horizontal
/// edges (x in [0,L-2], y in [0,L-1]).  The fictitious spins outside the
/// lattice are implied by the boundary conditions and are not stored.
struct SixVertexConfig {
  int L = 0;
  int s = 1;
  std::vector<std::vector<bool>> sh_up, sv_up;  // [x][y]
  std::vector<std::vector<int>> ch, cv;         // colors, 1..s

  static SixVertexConfig empty(int L, int s);
};

/// Heights on the (L+1)x(L+1) dual grid; grid[i][j] = phi(i-1/2, j-1/2),
/// zero point grid[0][0] = 0.  The outer ring alternates 0/1.
struct HeightField2D {
  int L = 0;
  std::vector<std::vector<int>> grid;  // [i][j], i,j in [0,L]
};

/// Fictitious boundary spin directions implied by the alternating outside
/// heights: true = up.
bool fict_sh_up(int x);
bool fict_sv_up(int y);

std::string to_label(const SixVertexConfig& c);
SixVertexConfig from_label(const std::string& label, int L, int s);

std::string to_json(const SixVertexConfig& c);
SixVertexConfig from_json(const std::string& json_text);

bool ice_rule_ok(const SixVertexConfig& c);

/// Integrates the height relations from the zero point; throws if the
/// configuration violates the ice rule (path-dependent heights).
HeightField2D height_field(const SixVertexConfig& c);

long long volume(const SixVertexConfig& c);

/// Value of the boundary term on a basis configuration (0 on the ground
/// basis; the constant 4L-6 is included).
double boundary_term_value(const SixVertexConfig& c);

/// Ice rule + all chains color-correlated Dyck walks (with the virtual
/// raising spins of even chains fixed to color 1) + vanishing boundary term.
bool is_ground_basis(const SixVertexConfig& c);

std::vector<SixVertexConfig> enumerate_ground_basis(int L, int s);
/// Uncolored ground surfaces (heights only, colors all 1).
std::vector<SixVertexConfig> enumerate_surfaces(int L);

ExactState ground_state_exact(int L, int s);
WeightedState ground_state(int L, int s, double q);

/// Plaquette flip at dual point (x+1/2, y+1/2) with color transport.
/// j in 1..4 selects the color-messenger sides: bit 0 the horizontal chain
/// (0: left, 1: right), bit 1 the vertical chain (0: below, 1: above).
/// Applies whichever direction of the move matches; absent when none does
/// or when a messenger would fall outside the physical lattice.
std::optional<SixVertexConfig> fredkin_move_2d(const SixVertexConfig& c, int x, int y, int j);

NetworkGraph build_network(int L, int s);

/// Physical symbols for the network's open legs, ordered as the open legs:
/// all horizontal spins in (x,y) lex order, then all vertical spins.
std::vector<Symbol> physical_assignment(const SixVertexConfig& c);

/// Tower of cube tiles per spin: tile type 1..5 per level plus the spin
/// color; levels run from bottom() upward.
struct CubeTower {
  int bottom = 0;
  std::vector<int> types;
  int color = 1;
};
struct CubeTiling {
  int L = 0, s = 1;
  std::vector<std::vector<CubeTower>> h, v;  // [x][y]
  std::vector<std::vector<int>> ch, cv;      // full color data for inversion
};

CubeTiling tiling_from_config(const SixVertexConfig& c);
SixVertexConfig config_from_tiling(const CubeTiling& t);

struct SurjectivityEntry {
  int pattern = 0;   // 4-bit code: n,s,e,w up-bits
  bool ice = false;  // satisfies the ice rule
  bool tiled = false;
};
/// Tries a local 4-tower tile assembly for each of the 16 vertex spin
/// patterns; exactly the 6 ice-rule patterns admit one.
std::vector<SurjectivityEntry> local_surjectivity_report(int s = 1);

struct AnnihilationReport {
  double max_residual = 0;
  double max_h0 = 0;
  double max_boundary = 0;
  int terms_checked = 0;
};
AnnihilationReport verify_annihilation(int L, int s, double q);

/// Per-tile gauge-operator pull-through identity plus the weight law
/// w = q^(side-arrow units / 8).  perturb_h3 replaces the H3 weight by q
/// (negative control; the check must then fail).
bool gauge_identity_check(double q, double alpha, bool perturb_h3 = false, int s = 2);

bool move_graph_connected(int L, int s);

}  // namespace holo::sixv
