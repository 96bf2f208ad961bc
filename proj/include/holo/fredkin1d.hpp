#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "holo/network.hpp"
#include "holo/statevec.hpp"

namespace holo::fredkin {

struct ColoredSpin {
  bool up = true;
  int color = 1;  // 1..s
  friend bool operator==(const ColoredSpin& a, const ColoredSpin& b) {
    return a.up == b.up && a.color == b.color;
  }
};

struct SpinChain {
  std::vector<ColoredSpin> spins;
  int s = 1;

  int size() const { return static_cast<int>(spins.size()); }
};

struct WalkProfile {
  std::vector<int> heights;  // N+1 points, heights[0] == 0
  long long area = 0;        // trapezoid sum, integer for closed walks
  bool dyck = false;         // non-negative and returns to zero
};

/// Canonical serialization, e.g. "U1 U2 D2 D1".
std::string to_label(const SpinChain& chain);
SpinChain from_label(const std::string& label, int s);

WalkProfile height_profile(const SpinChain& chain);

/// True iff the walk is Dyck and every down step's color equals the closest
/// unmatched up step to its left.
bool is_ground_basis(const SpinChain& chain);

/// For each site, the index of its matched partner (up<->down), or -1 for
/// unmatched steps.  Valid for arbitrary chains.
std::vector<int> matching(const SpinChain& chain);

/// All ground-basis chains in lexicographic label order; count is
/// Catalan(N/2) * s^(N/2).
std::vector<SpinChain> enumerate_ground_basis(int N, int s);

/// Amplitudes q^(A(w)) as exact monomials (exponent 12*A in twelfths).
ExactState ground_state_exact(int N, int s);
WeightedState ground_state(int N, int s, double q);

/// Fredkin move at sites (i-1, i, i+1); variant 1 swaps an up pair, variant
/// 2 a down pair.  Applies whichever direction of the move matches; absent
/// when neither does.
std::optional<SpinChain> fredkin_move(const SpinChain& chain, int i, int variant);

/// Full Hamiltonian over the (2s)^N space at numeric q.
/// Throws if (2s)^N exceeds dim_cap.
Eigen::SparseMatrix<double> build_hamiltonian(int N, int s, double q,
                                              std::uint64_t dim_cap = 1u << 20);

std::uint64_t basis_index(const SpinChain& chain);
SpinChain chain_from_index(std::uint64_t idx, int N, int s);

/// Holographic tile network: inverse step pyramid of rank-4 tensors with
/// delta caps on all non-physical open legs.  Physical legs are ordered by
/// site; symbol for spin up^c is +c, for down^c is -c.
NetworkGraph build_network(int N, int s);

Symbol physical_symbol(const ColoredSpin& spin, int s);

struct AnnihilationReport {
  double max_residual = 0;
  int terms_checked = 0;
};

/// Applies every Hamiltonian term to the enumerated ground state via sparse
/// local-operator application; reports the largest residual norm.
AnnihilationReport verify_annihilation(int N, int s, double q);

/// BFS over the ground basis under all Fredkin moves.
bool move_graph_connected(int N, int s);

}  // namespace holo::fredkin
