#include "holo/fredkin1d.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace holo::fredkin {

std::string to_label(const SpinChain& chain) {
  std::string out;
  for (int i = 0; i < chain.size(); ++i) {
    if (i) out += ' ';
    out += chain.spins[i].up ? 'U' : 'D';
    out += std::to_string(chain.spins[i].color);
  }
  return out;
}

SpinChain from_label(const std::string& label, int s) {
  SpinChain chain;
  chain.s = s;
  std::istringstream in(label);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || (tok[0] != 'U' && tok[0] != 'D'))
      throw std::invalid_argument("bad spin token: " + tok);
    ColoredSpin sp;
    sp.up = tok[0] == 'U';
    sp.color = std::stoi(tok.substr(1));
    if (sp.color < 1 || sp.color > s)
      throw std::invalid_argument("color out of range in: " + tok);
    chain.spins.push_back(sp);
  }
  return chain;
}

WalkProfile height_profile(const SpinChain& chain) {
  WalkProfile p;
  p.heights.resize(chain.size() + 1);
  p.heights[0] = 0;
  bool nonneg = true;
  long long twice_area = 0;
  for (int i = 0; i < chain.size(); ++i) {
    p.heights[i + 1] = p.heights[i] + (chain.spins[i].up ? 1 : -1);
    if (p.heights[i + 1] < 0) nonneg = false;
    twice_area += p.heights[i] + p.heights[i + 1];
  }
  p.area = twice_area / 2;  // exact: closed-walk trapezoid sums are even
  p.dyck = nonneg && p.heights[chain.size()] == 0;
  return p;
}

std::vector<int> matching(const SpinChain& chain) {
  std::vector<int> match(chain.size(), -1);
  std::vector<int> stack;
  for (int i = 0; i < chain.size(); ++i) {
    if (chain.spins[i].up) {
      stack.push_back(i);
    } else if (!stack.empty()) {
      match[i] = stack.back();
      match[stack.back()] = i;
      stack.pop_back();
    }
  }
  return match;
}

bool is_ground_basis(const SpinChain& chain) {
  if (!height_profile(chain).dyck) return false;
  auto match = matching(chain);
  for (int i = 0; i < chain.size(); ++i) {
    if (chain.spins[i].up) continue;
    if (match[i] < 0) return false;
    if (chain.spins[match[i]].color != chain.spins[i].color) return false;
  }
  return true;
}

namespace {

void enumerate_walks(int N, int h, std::vector<bool>& steps,
                     std::vector<std::vector<bool>>& out) {
  int i = static_cast<int>(steps.size());
  if (i == N) {
    if (h == 0) out.push_back(steps);
    return;
  }
  if (h + (N - i) >= 1) {  // room to come back down
    steps.push_back(true);
    enumerate_walks(N, h + 1, steps, out);
    steps.pop_back();
  }
  if (h > 0) {
    steps.push_back(false);
    enumerate_walks(N, h - 1, steps, out);
    steps.pop_back();
  }
}

}  // namespace

std::vector<SpinChain> enumerate_ground_basis(int N, int s) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("N must be even, >= 2");
  std::vector<std::vector<bool>> walks;
  std::vector<bool> steps;
  enumerate_walks(N, 0, steps, walks);

  std::vector<SpinChain> basis;
  for (const auto& w : walks) {
    SpinChain proto;
    proto.s = s;
    for (bool up : w) proto.spins.push_back({up, 1});
    auto match = matching(proto);
    // one free color per matched pair, carried on the up step
    std::vector<int> ups;
    for (int i = 0; i < N; ++i)
      if (w[i]) ups.push_back(i);
    const int pairs = static_cast<int>(ups.size());
    std::vector<int> colors(pairs, 1);
    while (true) {
      SpinChain c = proto;
      for (int p = 0; p < pairs; ++p) {
        c.spins[ups[p]].color = colors[p];
        c.spins[match[ups[p]]].color = colors[p];
      }
      basis.push_back(c);
      int p = pairs - 1;
      while (p >= 0 && colors[p] == s) colors[p--] = 1;
      if (p < 0) break;
      colors[p]++;
    }
  }
  std::sort(basis.begin(), basis.end(), [](const SpinChain& a, const SpinChain& b) {
    return to_label(a) < to_label(b);
  });
  return basis;
}

ExactState ground_state_exact(int N, int s) {
  ExactState st;
  for (const auto& c : enumerate_ground_basis(N, s)) {
    auto p = height_profile(c);
    st.add(to_label(c), QMonomial(Rational(1), 12 * p.area));
  }
  return st;
}

WeightedState ground_state(int N, int s, double q) {
  return normalize(WeightedState::from_exact(ground_state_exact(N, s), q));
}

std::optional<SpinChain> fredkin_move(const SpinChain& chain, int i, int variant) {
  if (i < 1 || i + 1 >= chain.size()) return std::nullopt;
  const ColoredSpin a = chain.spins[i - 1], b = chain.spins[i], c = chain.spins[i + 1];
  SpinChain out = chain;
  auto set3 = [&](ColoredSpin x, ColoredSpin y, ColoredSpin z) {
    out.spins[i - 1] = x;
    out.spins[i] = y;
    out.spins[i + 1] = z;
    return out;
  };
  if (variant == 1) {
    // up^c1 up^c2 down^c3  <->  up^c2 down^c3 up^c1
    if (a.up && b.up && !c.up)
      return set3(b, c, {true, a.color});
    if (a.up && !b.up && c.up)
      return set3({true, c.color}, {true, a.color}, {false, b.color});
  } else if (variant == 2) {
    // up^c1 down^c2 down^c3  <->  down^c3 up^c1 down^c2
    if (a.up && !b.up && !c.up)
      return set3({false, c.color}, {true, a.color}, {false, b.color});
    if (!a.up && b.up && !c.up)
      return set3(b, c, {false, a.color});
  } else {
    throw std::invalid_argument("fredkin_move: variant must be 1 or 2");
  }
  return std::nullopt;
}

std::uint64_t basis_index(const SpinChain& chain) {
  std::uint64_t idx = 0;
  const std::uint64_t radix = 2 * chain.s;
  for (int i = chain.size() - 1; i >= 0; --i) {
    std::uint64_t v = (chain.spins[i].up ? 0 : chain.s) + (chain.spins[i].color - 1);
    idx = idx * radix + v;
  }
  return idx;
}

SpinChain chain_from_index(std::uint64_t idx, int N, int s) {
  SpinChain chain;
  chain.s = s;
  const std::uint64_t radix = 2 * s;
  for (int i = 0; i < N; ++i) {
    int v = static_cast<int>(idx % radix);
    idx /= radix;
    chain.spins.push_back({v < s, (v % s) + 1});
  }
  return chain;
}

Eigen::SparseMatrix<double> build_hamiltonian(int N, int s, double q,
                                              std::uint64_t dim_cap) {
  double ld = N * std::log2(2.0 * s);
  if (ld > 63 || (static_cast<std::uint64_t>(1) << static_cast<int>(std::ceil(ld))) > dim_cap * 2)
    throw std::invalid_argument("build_hamiltonian: dimension cap exceeded");
  std::uint64_t dim = 1;
  for (int i = 0; i < N; ++i) dim *= 2 * s;
  if (dim > dim_cap) throw std::invalid_argument("build_hamiltonian: dimension cap exceeded");

  std::vector<Eigen::Triplet<double>> trip;
  auto add = [&](std::uint64_t r, std::uint64_t c, double v) {
    if (v != 0.0) trip.emplace_back(static_cast<int>(r), static_cast<int>(c), v);
  };

  const std::uint64_t radix = 2 * s;
  std::vector<std::uint64_t> pow(N + 1, 1);
  for (int i = 0; i < N; ++i) pow[i + 1] = pow[i] * radix;
  auto spin_at = [&](std::uint64_t idx, int i) { return (idx / pow[i]) % radix; };
  auto with_spin = [&](std::uint64_t idx, int i, std::uint64_t v) {
    return idx - spin_at(idx, i) * pow[i] + v * pow[i];
  };
  auto up_code = [&](int color) { return static_cast<std::uint64_t>(color - 1); };
  auto down_code = [&](int color) { return static_cast<std::uint64_t>(s + color - 1); };

  for (std::uint64_t k = 0; k < dim; ++k) {
    // boundary term
    double diag = 0;
    if (spin_at(k, 0) >= static_cast<std::uint64_t>(s)) diag += 1;       // down at 0
    if (spin_at(k, N - 1) < static_cast<std::uint64_t>(s)) diag += 1;    // up at N-1
    // color mixing, first sum: mismatched adjacent up-down pairs
    for (int i = 0; i + 1 < N; ++i) {
      std::uint64_t a = spin_at(k, i), b = spin_at(k, i + 1);
      if (a < static_cast<std::uint64_t>(s) && b >= static_cast<std::uint64_t>(s) &&
          a != b - s)
        diag += 1;
    }
    add(k, k, diag);

    // color mixing, second sum: s |cc><cc| - sum_{c1,c2} |c1c1><c2c2|
    for (int i = 0; i + 1 < N; ++i) {
      std::uint64_t a = spin_at(k, i), b = spin_at(k, i + 1);
      if (a < static_cast<std::uint64_t>(s) && b >= static_cast<std::uint64_t>(s) &&
          a == b - s) {
        add(k, k, static_cast<double>(s));
        for (int c2 = 1; c2 <= s; ++c2) {
          std::uint64_t k2 = with_spin(with_spin(k, i, up_code(c2)), i + 1, down_code(c2));
          add(k2, k, -1.0);
        }
      }
    }
  }

  // bulk projectors
  const double nrm = 1.0 / (1.0 / (q * q) + q * q);
  for (int i = 1; i + 1 < N; ++i) {
    for (std::uint64_t k = 0; k < dim; ++k) {
      std::uint64_t a = spin_at(k, i - 1), b = spin_at(k, i), c = spin_at(k, i + 1);
      bool aup = a < static_cast<std::uint64_t>(s);
      bool bup = b < static_cast<std::uint64_t>(s);
      bool cup = c < static_cast<std::uint64_t>(s);
      // |F1> = n (q^-1 |U1 U2 D3> - q |U2 D3 U1>);  k matching the first ket
      if (aup && bup && !cup) {
        std::uint64_t m = with_spin(with_spin(with_spin(k, i - 1, b), i, c), i + 1,
                                    up_code(static_cast<int>(a) + 1));
        add(k, k, nrm / (q * q));
        add(m, m, nrm * q * q);
        add(k, m, -nrm);
        add(m, k, -nrm);
      }
      // |F2> = n (q^-1 |U1 D2 D3> - q |D3 U1 D2>)
      if (aup && !bup && !cup) {
        std::uint64_t m = with_spin(with_spin(with_spin(k, i - 1, c), i, a), i + 1, b);
        add(k, k, nrm / (q * q));
        add(m, m, nrm * q * q);
        add(k, m, -nrm);
        add(m, k, -nrm);
      }
    }
  }

  Eigen::SparseMatrix<double> H(static_cast<int>(dim), static_cast<int>(dim));
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

namespace {

AlphabetRef chain_alphabet(int s) {
  static std::map<int, AlphabetRef> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  auto a = std::make_shared<LegAlphabet>(1, s, "chain");
  cache[s] = a;
  return a;
}

SparseTensor tile_tensor(int s) {
  AlphabetRef alpha = chain_alphabet(s);
  SparseTensor t({{"k1", alpha}, {"k2", alpha}, {"k3", alpha}, {"k4", alpha}});
  auto sym = [&](const ArrowComp& comp) { return alpha->encode({comp}); };
  const Symbol z = sym(ArrowComp::zero());
  for (int c = 1; c <= s; ++c) {
    Symbol pc = sym(ArrowComp::plus(c)), mc = sym(ArrowComp::minus(c));
    t.set({pc, z, pc, z}, QMonomial(Rational(1), 0));   // A1
    t.set({pc, z, z, pc}, QMonomial(Rational(1), 6));   // A2, sqrt(q)
    t.set({z, pc, z, pc}, QMonomial(Rational(1), 12));  // A3, q
    t.set({mc, pc, z, z}, QMonomial(Rational(1), 6));   // A4
    t.set({mc, z, mc, z}, QMonomial(Rational(1), 0));   // A5
  }
  return t;
}

SparseTensor delta_cap(AlphabetRef alpha, Symbol fixed) {
  SparseTensor t({{"k", alpha}});
  t.set({fixed}, QMonomial::one());
  return t;
}

}  // namespace

Symbol physical_symbol(const ColoredSpin& spin, int s) {
  auto alpha = chain_alphabet(s);
  return alpha->encode({spin.up ? ArrowComp::plus(spin.color) : ArrowComp::minus(spin.color)});
}

NetworkGraph build_network(int N, int s) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("N must be even, >= 2");
  NetworkGraph net;
  AlphabetRef alpha = chain_alphabet(s);
  SparseTensor tile = tile_tensor(s);
  const Symbol z = alpha->encode({ArrowComp::zero()});
  const int top = N / 2;

  // node id per (site, level)
  std::map<std::pair<int, int>, int> id;
  auto tower_bottom = [&](int i) { return top - std::min(i + 1, N - i) + 1; };
  for (int i = 0; i < N; ++i)
    for (int l = tower_bottom(i); l <= top; ++l)
      id[{i, l}] = net.add_node(tile, "site" + std::to_string(i) + ".l" + std::to_string(l));

  for (int i = 0; i < N; ++i) {
    for (int l = tower_bottom(i); l <= top; ++l) {
      int n = id[{i, l}];
      // bottom leg: physical at tower bottom, else vertical edge downward
      if (l == tower_bottom(i)) net.mark_open(n, "k1", LegRole::Physical);
      else net.connect(id[{i, l - 1}], "k3", n, "k1");
      // top leg: cap at the top level
      if (l == top) {
        int cap = net.add_node(delta_cap(alpha, z), "cap");
        net.connect(n, "k3", cap, "k");
      }
      // left leg: neighbor at same level or cap
      auto left = id.find({i - 1, l});
      if (left == id.end()) {
        int cap = net.add_node(delta_cap(alpha, z), "cap");
        net.connect(n, "k2", cap, "k");
      }
      // right leg: connect once from the left side
      auto right = id.find({i + 1, l});
      if (right != id.end()) net.connect(n, "k4", right->second, "k2");
      else {
        int cap = net.add_node(delta_cap(alpha, z), "cap");
        net.connect(n, "k4", cap, "k");
      }
    }
  }
  net.validate();
  return net;
}

AnnihilationReport verify_annihilation(int N, int s, double q) {
  WeightedState gs = ground_state(N, s, q);
  AnnihilationReport rep;
  const double nrm = 1.0 / std::sqrt(1.0 / (q * q) + q * q);

  auto check = [&](const WeightedState& res) {
    rep.max_residual = std::max(rep.max_residual, res.norm());
    rep.terms_checked++;
  };

  // boundary projectors
  for (int c = 1; c <= s; ++c) {
    check(apply_local_operator(gs, [&](const BasisLabel& k) {
      SpinChain ch = from_label(k, s);
      std::vector<std::pair<BasisLabel, double>> out;
      if (!ch.spins[0].up && ch.spins[0].color == c) out.push_back({k, 1.0});
      return out;
    }));
    check(apply_local_operator(gs, [&](const BasisLabel& k) {
      SpinChain ch = from_label(k, s);
      std::vector<std::pair<BasisLabel, double>> out;
      if (ch.spins[N - 1].up && ch.spins[N - 1].color == c) out.push_back({k, 1.0});
      return out;
    }));
  }

  // color-mixing projectors
  for (int i = 0; i + 1 < N; ++i) {
    check(apply_local_operator(gs, [&](const BasisLabel& k) {
      SpinChain ch = from_label(k, s);
      std::vector<std::pair<BasisLabel, double>> out;
      const auto &a = ch.spins[i], &b = ch.spins[i + 1];
      if (a.up && !b.up && a.color != b.color) out.push_back({k, 1.0});
      return out;
    }));
    check(apply_local_operator(gs, [&](const BasisLabel& k) {
      SpinChain ch = from_label(k, s);
      std::vector<std::pair<BasisLabel, double>> out;
      const auto &a = ch.spins[i], &b = ch.spins[i + 1];
      if (a.up && !b.up && a.color == b.color) {
        out.push_back({k, static_cast<double>(s)});
        for (int c2 = 1; c2 <= s; ++c2) {
          SpinChain m = ch;
          m.spins[i] = {true, c2};
          m.spins[i + 1] = {false, c2};
          out.push_back({to_label(m), -1.0});
        }
      }
      return out;
    }));
  }

  // bulk Fredkin projectors: residual of <F|GS> for every i and both
  // variants, evaluated through the sparse state
  for (int i = 1; i + 1 < N; ++i) {
    for (int variant : {1, 2}) {
      check(apply_local_operator(gs, [&](const BasisLabel& k) {
        SpinChain ch = from_label(k, s);
        std::vector<std::pair<BasisLabel, double>> out;
        const auto &a = ch.spins[i - 1], &b = ch.spins[i], &c = ch.spins[i + 1];
        bool high = variant == 1 ? (a.up && b.up && !c.up) : (a.up && !b.up && !c.up);
        bool low = variant == 1 ? (a.up && !b.up && c.up) : (!a.up && b.up && !c.up);
        if (!high && !low) return out;
        auto moved = fredkin_move(ch, i, variant);
        if (!moved) return out;
        // |F><F| with |F> = nrm (q^-1 |high> - q |low>)
        double self = high ? nrm / q : -nrm * q;
        double other = high ? -nrm * q : nrm / q;
        out.push_back({k, self * self});
        out.push_back({to_label(*moved), self * other});
        return out;
      }));
    }
  }
  return rep;
}

bool move_graph_connected(int N, int s) {
  // The graph generated by the Hamiltonian's off-diagonal structure: Fredkin
  // swaps plus recoloring of matched adjacent up-down pairs (the color
  // mixing term).  Fredkin moves alone conserve the up-color multiset, so
  // for s >= 2 the recolor edges are part of the uniqueness argument.
  auto basis = enumerate_ground_basis(N, s);
  std::map<BasisLabel, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[to_label(basis[i])] = static_cast<int>(i);
  std::vector<bool> seen(basis.size(), false);
  std::deque<int> todo{0};
  seen[0] = true;
  std::size_t reached = 1;
  auto visit = [&](const SpinChain& c) {
    auto it = index.find(to_label(c));
    if (it == index.end()) return;  // moves preserve membership; guard anyway
    if (!seen[it->second]) {
      seen[it->second] = true;
      ++reached;
      todo.push_back(it->second);
    }
  };
  while (!todo.empty()) {
    int cur = todo.front();
    todo.pop_front();
    const SpinChain& c = basis[cur];
    for (int i = 1; i + 1 < N; ++i)
      for (int variant : {1, 2})
        if (auto moved = fredkin_move(c, i, variant)) visit(*moved);
    for (int i = 0; i + 1 < N; ++i) {
      if (!(c.spins[i].up && !c.spins[i + 1].up)) continue;
      if (c.spins[i].color != c.spins[i + 1].color) continue;
      for (int c2 = 1; c2 <= s; ++c2) {
        if (c2 == c.spins[i].color) continue;
        SpinChain r = c;
        r.spins[i] = {true, c2};
        r.spins[i + 1] = {false, c2};
        visit(r);
      }
    }
  }
  return reached == basis.size();
}

}  // namespace holo::fredkin
