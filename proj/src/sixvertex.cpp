#include "holo/sixvertex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace holo::sixv {

namespace {

int iup(bool b) { return b ? 1 : -1; }  // 2*S

}  // namespace

SixVertexConfig SixVertexConfig::empty(int L, int s) {
  SixVertexConfig c;
  c.L = L;
  c.s = s;
  c.sh_up.assign(L, std::vector<bool>(L - 1, true));
  c.sv_up.assign(L - 1, std::vector<bool>(L, true));
  c.ch.assign(L, std::vector<int>(L - 1, 1));
  c.cv.assign(L - 1, std::vector<int>(L, 1));
  return c;
}

bool fict_sh_up(int x) { return x % 2 == 0; }
bool fict_sv_up(int y) { return y % 2 == 0; }

std::string to_label(const SixVertexConfig& c) {
  std::string out = "h:";
  for (int y = 0; y <= c.L - 2; ++y) {
    if (y) out += ',';
    for (int x = 0; x < c.L; ++x) {
      out += c.sh_up[x][y] ? 'U' : 'D';
      out += std::to_string(c.ch[x][y]);
    }
  }
  out += "|v:";
  for (int x = 0; x <= c.L - 2; ++x) {
    if (x) out += ',';
    for (int y = 0; y < c.L; ++y) {
      out += c.sv_up[x][y] ? 'U' : 'D';
      out += std::to_string(c.cv[x][y]);
    }
  }
  return out;
}

SixVertexConfig from_label(const std::string& label, int L, int s) {
  SixVertexConfig c = SixVertexConfig::empty(L, s);
  auto bar = label.find('|');
  if (label.rfind("h:", 0) != 0 || bar == std::string::npos)
    throw std::invalid_argument("bad 6-vertex label");
  auto parse_block = [&](const std::string& blk, bool horizontal) {
    std::istringstream in(blk);
    std::string row;
    int chain = 0;
    while (std::getline(in, row, ',')) {
      std::size_t p = 0;
      int pos = 0;
      while (p < row.size()) {
        bool up = row[p] == 'U';
        std::size_t e = p + 1;
        while (e < row.size() && std::isdigit(static_cast<unsigned char>(row[e]))) ++e;
        int color = std::stoi(row.substr(p + 1, e - p - 1));
        if (horizontal) {
          c.sh_up[pos][chain] = up;
          c.ch[pos][chain] = color;
        } else {
          c.sv_up[chain][pos] = up;
          c.cv[chain][pos] = color;
        }
        ++pos;
        p = e;
      }
      ++chain;
    }
  };
  parse_block(label.substr(2, bar - 2), true);
  parse_block(label.substr(bar + 3), false);
  return c;
}

std::string to_json(const SixVertexConfig& c) {
  nlohmann::json j;
  j["L"] = c.L;
  j["s"] = c.s;
  auto pack_sign = [](const std::vector<std::vector<bool>>& m) {
    std::vector<std::vector<int>> out;
    for (const auto& row : m) {
      std::vector<int> r;
      for (bool b : row) r.push_back(b ? 1 : -1);
      out.push_back(r);
    }
    return out;
  };
  j["Sh"] = pack_sign(c.sh_up);
  j["Sv"] = pack_sign(c.sv_up);
  j["colors_h"] = c.ch;
  j["colors_v"] = c.cv;
  return j.dump();
}

SixVertexConfig from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SixVertexConfig c = SixVertexConfig::empty(j.at("L").get<int>(), j.at("s").get<int>());
  auto sh = j.at("Sh").get<std::vector<std::vector<int>>>();
  auto sv = j.at("Sv").get<std::vector<std::vector<int>>>();
  for (int x = 0; x < c.L; ++x)
    for (int y = 0; y <= c.L - 2; ++y) c.sh_up[x][y] = sh.at(x).at(y) > 0;
  for (int x = 0; x <= c.L - 2; ++x)
    for (int y = 0; y < c.L; ++y) c.sv_up[x][y] = sv.at(x).at(y) > 0;
  c.ch = j.at("colors_h").get<std::vector<std::vector<int>>>();
  c.cv = j.at("colors_v").get<std::vector<std::vector<int>>>();
  return c;
}

bool ice_rule_ok(const SixVertexConfig& c) {
  const int L = c.L;
  auto sh = [&](int x, int y) {  // 2*S^h, fictitious rows included
    if (y < 0 || y > L - 2) return iup(fict_sh_up(x));
    return iup(c.sh_up[x][y]);
  };
  auto sv = [&](int x, int y) {
    if (x < 0 || x > L - 2) return iup(fict_sv_up(y));
    return iup(c.sv_up[x][y]);
  };
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y)
      if (sh(x, y - 1) - sh(x, y) - sv(x - 1, y) + sv(x, y) != 0) return false;
  return true;
}

HeightField2D height_field(const SixVertexConfig& c) {
  const int L = c.L;
  HeightField2D f;
  f.L = L;
  f.grid.assign(L + 1, std::vector<int>(L + 1, INT32_MIN));
  auto sh = [&](int x, int y) {
    if (y < 0 || y > L - 2) return iup(fict_sh_up(x));
    return iup(c.sh_up[x][y]);
  };
  auto sv = [&](int x, int y) {
    if (x < 0 || x > L - 2) return iup(fict_sv_up(y));
    return iup(c.sv_up[x][y]);
  };
  // grid[i][j] = phi(i-1/2, j-1/2); east steps cross S^h_{i, j-1}, north
  // steps cross S^v_{i-1, j}
  f.grid[0][0] = 0;
  for (int j = 0; j <= L; ++j) {
    if (j > 0) f.grid[0][j] = f.grid[0][j - 1] + sv(-1, j - 1);
    for (int i = 1; i <= L; ++i) f.grid[i][j] = f.grid[i - 1][j] + sh(i - 1, j - 1);
  }
  // path independence <=> ice rule at every vertex
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      if (f.grid[i][j + 1] + sh(i, j) != f.grid[i + 1][j + 1] ||
          f.grid[i + 1][j] + sv(i, j) != f.grid[i + 1][j + 1])
        throw std::domain_error("height_field: ice rule violated");
  return f;
}

long long volume(const SixVertexConfig& c) {
  auto f = height_field(c);
  long long v = 0;
  for (int i = 1; i <= c.L - 1; ++i)
    for (int j = 1; j <= c.L - 1; ++j) v += f.grid[i][j];
  return v;
}

double boundary_term_value(const SixVertexConfig& c) {
  const int L = c.L;
  auto sh = [&](int x, int y) { return 0.5 * iup(c.sh_up[x][y]); };
  auto sv = [&](int x, int y) { return 0.5 * iup(c.sv_up[x][y]); };
  double v = 4.0 * L - 6.0;
  for (int y = 0; y <= L - 2; ++y) v += sh(L - 1, y) - sh(0, y);
  for (int x = 1; x <= L - 2; ++x)
    v += (x % 2 == 0 ? -1.0 : 1.0) * (sh(x, 0) + sh(x, L - 2));
  for (int x = 0; x <= L - 2; ++x) v += sv(x, L - 1) - sv(x, 0);
  for (int y = 1; y <= L - 2; ++y)
    v += (y % 2 == 0 ? -1.0 : 1.0) * (sv(0, y) + sv(L - 2, y));
  return v;
}

namespace {

struct ChainView {
  std::vector<std::pair<bool, int>> steps;  // (up, color) per physical spin
  bool raised = false;  // even chain: one virtual up/down of color 1
};

ChainView h_chain(const SixVertexConfig& c, int y) {
  ChainView v;
  v.raised = y % 2 == 0;
  for (int x = 0; x < c.L; ++x) v.steps.push_back({c.sh_up[x][y], c.ch[x][y]});
  return v;
}
ChainView v_chain(const SixVertexConfig& c, int x) {
  ChainView v;
  v.raised = x % 2 == 0;
  for (int y = 0; y < c.L; ++y) v.steps.push_back({c.sv_up[x][y], c.cv[x][y]});
  return v;
}

bool chain_color_ok(const ChainView& ch) {
  std::vector<std::pair<bool, int>> ext;
  if (ch.raised) ext.push_back({true, 1});
  ext.insert(ext.end(), ch.steps.begin(), ch.steps.end());
  if (ch.raised) ext.push_back({false, 1});
  std::vector<int> stack;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (ext[i].first) {
      stack.push_back(static_cast<int>(i));
    } else {
      if (stack.empty()) return false;
      if (ext[stack.back()].second != ext[i].second) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

/// Physical partner index per position, -1 when matched with a virtual
/// raising step, -2 when unmatched (invalid walks only).
std::vector<int> chain_pairs(const ChainView& ch) {
  const int off = ch.raised ? 1 : 0;
  std::vector<std::pair<bool, int>> ext;
  if (ch.raised) ext.push_back({true, 1});
  ext.insert(ext.end(), ch.steps.begin(), ch.steps.end());
  if (ch.raised) ext.push_back({false, 1});
  std::vector<int> match(ext.size(), -2);
  std::vector<int> stack;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    if (ext[i].first) {
      stack.push_back(static_cast<int>(i));
    } else if (!stack.empty()) {
      match[i] = stack.back();
      match[stack.back()] = static_cast<int>(i);
      stack.pop_back();
    }
  }
  std::vector<int> out(ch.steps.size(), -2);
  for (std::size_t p = 0; p < ch.steps.size(); ++p) {
    int m = match[p + off];
    if (m < 0) continue;
    int mp = m - off;
    out[p] = (mp < 0 || mp >= static_cast<int>(ch.steps.size())) ? -1 : mp;
  }
  return out;
}

}  // namespace

bool is_ground_basis(const SixVertexConfig& c) {
  if (!ice_rule_ok(c)) return false;
  HeightField2D f = height_field(c);
  for (int i = 1; i <= c.L - 1; ++i)
    for (int j = 1; j <= c.L - 1; ++j)
      if (f.grid[i][j] < 0) return false;
  if (boundary_term_value(c) != 0.0) return false;
  for (int y = 0; y <= c.L - 2; ++y)
    if (!chain_color_ok(h_chain(c, y))) return false;
  for (int x = 0; x <= c.L - 2; ++x)
    if (!chain_color_ok(v_chain(c, x))) return false;
  return true;
}

std::vector<SixVertexConfig> enumerate_surfaces(int L) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("L must be even, >= 2");
  // The boundary term freezes the outer spin rows, which pins every dual
  // height within distance one of the ring; only the inner block is free.
  std::vector<std::vector<int>> grid(L + 1, std::vector<int>(L + 1, INT32_MIN));
  for (int i = 0; i <= L; ++i) {
    grid[i][0] = grid[i][L] = (i % 2 == 1) ? 1 : 0;
    grid[0][i] = grid[L][i] = (i % 2 == 1) ? 1 : 0;
  }
  for (int i = 1; i <= L - 1; ++i) {
    grid[i][1] = grid[i][L - 1] = (i % 2 == 1) ? 2 : 1;
    grid[1][i] = grid[L - 1][i] = (i % 2 == 1) ? 2 : 1;
  }

  std::vector<std::pair<int, int>> free_pts;
  for (int j = 2; j <= L - 2; ++j)
    for (int i = 2; i <= L - 2; ++i) free_pts.push_back({i, j});

  std::vector<SixVertexConfig> out;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == free_pts.size()) {
      SixVertexConfig c = SixVertexConfig::empty(L, 1);
      for (int x = 0; x < L; ++x)
        for (int y = 0; y <= L - 2; ++y)
          c.sh_up[x][y] = grid[x + 1][y + 1] > grid[x][y + 1];
      for (int x = 0; x <= L - 2; ++x)
        for (int y = 0; y < L; ++y)
          c.sv_up[x][y] = grid[x + 1][y + 1] > grid[x + 1][y];
      out.push_back(std::move(c));
      return;
    }
    auto [i, j] = free_pts[k];
    for (int v = (i + j) % 2; v <= 2 * L; v += 2) {
      auto ok = [&](int ni, int nj) {
        return grid[ni][nj] == INT32_MIN || std::abs(v - grid[ni][nj]) == 1;
      };
      if (!ok(i - 1, j) || !ok(i + 1, j) || !ok(i, j - 1) || !ok(i, j + 1)) continue;
      grid[i][j] = v;
      rec(k + 1);
      grid[i][j] = INT32_MIN;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const SixVertexConfig& a, const SixVertexConfig& b) {
    return to_label(a) < to_label(b);
  });
  return out;
}

std::vector<SixVertexConfig> enumerate_ground_basis(int L, int s) {
  if (L > 6) throw std::invalid_argument("enumerate_ground_basis: desk scale is L <= 6");
  std::vector<SixVertexConfig> out;
  for (const auto& surf : enumerate_surfaces(L)) {
    struct Slot {
      bool horizontal;
      int chain, a, b;
    };
    std::vector<Slot> slots;
    SixVertexConfig base = surf;
    base.s = s;
    auto scan = [&](const ChainView& ch, bool horizontal, int idx) {
      auto pairs = chain_pairs(ch);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (pairs[p] > static_cast<int>(p))
          slots.push_back({horizontal, idx, static_cast<int>(p), pairs[p]});
      // virtual-matched positions keep the default color 1
    };
    for (int y = 0; y <= L - 2; ++y) scan(h_chain(surf, y), true, y);
    for (int x = 0; x <= L - 2; ++x) scan(v_chain(surf, x), false, x);

    std::vector<int> colors(slots.size(), 1);
    while (true) {
      SixVertexConfig c = base;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const Slot& sl = slots[k];
        if (sl.horizontal) {
          c.ch[sl.a][sl.chain] = colors[k];
          c.ch[sl.b][sl.chain] = colors[k];
        } else {
          c.cv[sl.chain][sl.a] = colors[k];
          c.cv[sl.chain][sl.b] = colors[k];
        }
      }
      out.push_back(c);
      int k = static_cast<int>(slots.size()) - 1;
      while (k >= 0 && colors[k] == s) colors[k--] = 1;
      if (k < 0) break;
      colors[k]++;
    }
  }
  std::sort(out.begin(), out.end(), [](const SixVertexConfig& a, const SixVertexConfig& b) {
    return to_label(a) < to_label(b);
  });
  return out;
}

ExactState ground_state_exact(int L, int s) {
  ExactState st;
  for (const auto& c : enumerate_ground_basis(L, s))
    st.add(to_label(c), QMonomial(Rational(1), 12 * volume(c)));
  return st;
}

WeightedState ground_state(int L, int s, double q) {
  return normalize(WeightedState::from_exact(ground_state_exact(L, s), q));
}

std::optional<SixVertexConfig> fredkin_move_2d(const SixVertexConfig& c, int x, int y, int j) {
  const int L = c.L;
  if (x < 0 || x > L - 2 || y < 0 || y > L - 2) return std::nullopt;
  if (j < 1 || j > 4) throw std::invalid_argument("fredkin_move_2d: j in 1..4");
  const bool h_right = (j - 1) & 1;
  const bool v_above = (j - 1) & 2;
  const int mhx = h_right ? x + 2 : x - 1;
  const int mvy = v_above ? y + 2 : y - 1;
  if (mhx < 0 || mhx > L - 1 || mvy < 0 || mvy > L - 1) return std::nullopt;

  // the color messenger points up on the left of a window and down on the
  // right, in both move orientations
  if (h_right == c.sh_up[mhx][y]) return std::nullopt;
  if (v_above == c.sv_up[x][mvy]) return std::nullopt;

  const bool peak = c.sh_up[x][y] && !c.sh_up[x + 1][y];
  const bool valley = !c.sh_up[x][y] && c.sh_up[x + 1][y];
  if (!peak && !valley) return std::nullopt;
  // the four plaquette spins flip as one event; the vertical pair must form
  // the same peak/valley
  if (peak && !(c.sv_up[x][y] && !c.sv_up[x][y + 1])) return std::nullopt;
  if (valley && !(!c.sv_up[x][y] && c.sv_up[x][y + 1])) return std::nullopt;

  SixVertexConfig out = c;
  auto transport = [&](bool right_messenger, int ca, int cb, int cm, int& na, int& nb,
                       int& nm) {
    // left messenger:  lowering (Uc1 | Uc2 Dc3) -> (Uc2 | Dc3 Uc1)
    //                  raising  (Uc1 | Dc2 Uc3) -> (Uc3 | Uc1 Dc2)
    // right messenger: lowering (Uc1 Dc2 | Dc3) -> (Dc3 Uc1 | Dc2)
    //                  raising  (Dc1 Uc2 | Dc3) -> (Uc2 Dc3 | Dc1)
    if (!right_messenger) {
      if (peak) { nm = ca; na = cb; nb = cm; }
      else { nm = cb; na = cm; nb = ca; }
    } else {
      if (peak) { na = cm; nb = ca; nm = cb; }
      else { na = cb; nb = cm; nm = ca; }
    }
  };

  out.sh_up[x][y] = !c.sh_up[x][y];
  out.sh_up[x + 1][y] = !c.sh_up[x + 1][y];
  out.sv_up[x][y] = !c.sv_up[x][y];
  out.sv_up[x][y + 1] = !c.sv_up[x][y + 1];
  {
    int na, nb, nm;
    transport(h_right, c.ch[x][y], c.ch[x + 1][y], c.ch[mhx][y], na, nb, nm);
    out.ch[x][y] = na;
    out.ch[x + 1][y] = nb;
    out.ch[mhx][y] = nm;
  }
  {
    int na, nb, nm;
    transport(v_above, c.cv[x][y], c.cv[x][y + 1], c.cv[x][mvy], na, nb, nm);
    out.cv[x][y] = na;
    out.cv[x][y + 1] = nb;
    out.cv[x][mvy] = nm;
  }
  return out;
}

// ---------------------------------------------------------------------------
// network
// ---------------------------------------------------------------------------

namespace {

AlphabetRef cube_alphabet(int s) {
  static std::map<int, AlphabetRef> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  auto a = std::make_shared<LegAlphabet>(2, s, "cube");
  cache[s] = a;
  return a;
}

constexpr const char* kCube[6] = {"k1", "k2", "k3", "k4", "k5", "k6"};

/// H(q) / V(q) from the tile tables.  x3_exp12 overrides the weight of the
/// 4-arrow tile (negative-control hook for the gauge check).
SparseTensor cube_tensor(int s, bool horizontal, int x3_exp12 = 6) {
  AlphabetRef a = cube_alphabet(s);
  std::vector<Leg> legs;
  for (auto* n : kCube) legs.push_back({n, a});
  SparseTensor t(std::move(legs));
  auto enc = [&](ArrowComp d, ArrowComp sld) { return a->encode({d, sld}); };
  const Symbol zz = enc(ArrowComp::zero(), ArrowComp::zero());
  auto own2 = [&](int c, bool plus) {
    ArrowComp v = plus ? ArrowComp::plus2(c) : ArrowComp::minus2(c);
    return horizontal ? enc(v, ArrowComp::zero()) : enc(ArrowComp::zero(), v);
  };
  auto side = [&](int own, int cross) {
    return horizontal ? enc(ArrowComp::plus(own), ArrowComp::plus(cross))
                      : enc(ArrowComp::plus(cross), ArrowComp::plus(own));
  };
  for (int c1 = 1; c1 <= s; ++c1) {
    t.accumulate({own2(c1, true), zz, zz, zz, zz, own2(c1, true)}, QMonomial(Rational(1), 0));
    t.accumulate({own2(c1, false), zz, zz, zz, zz, own2(c1, false)},
                 QMonomial(Rational(1), 0));
    for (int c2 = 1; c2 <= s; ++c2) {
      t.accumulate({own2(c1, true), side(c1, c2), zz, zz, side(c1, c2), zz},
                   QMonomial(Rational(1), 3));
      t.accumulate({own2(c1, false), zz, side(c1, c2), side(c1, c2), zz, zz},
                   QMonomial(Rational(1), 3));
      for (int c3 = 1; c3 <= s; ++c3)
        t.accumulate({zz, side(c1, c2), side(c1, c3), side(c1, c3), side(c1, c2), zz},
                     QMonomial(Rational(1), x3_exp12));
    }
  }
  return t;
}

struct TowerKey {
  bool horizontal = true;
  int x = 0, y = 0;
  friend bool operator<(const TowerKey& a, const TowerKey& b) {
    return std::tie(a.horizontal, a.x, a.y) < std::tie(b.horizontal, b.x, b.y);
  }
};

struct TowerRange {
  int bottom = 0, top = 0;
};

std::pair<int, int> tower_pos(const TowerKey& k) {
  return k.horizontal ? std::make_pair(2 * k.x, 2 * k.y + 1)
                      : std::make_pair(2 * k.x + 1, 2 * k.y);
}

std::optional<TowerKey> tower_at(int px, int py, int L) {
  if (((px % 2) + 2) % 2 == 0) {  // H sublattice: even px, odd py
    if (((py % 2) + 2) % 2 == 0) return std::nullopt;
    int x = px / 2, y = (py - 1) / 2;
    if (px < 0 || x > L - 1 || py < 0 || y > L - 2) return std::nullopt;
    return TowerKey{true, x, y};
  }
  if (((py % 2) + 2) % 2 != 0) return std::nullopt;
  int x = (px - 1) / 2, y = py / 2;
  if (px < 0 || x > L - 2 || py < 0 || y > L - 1) return std::nullopt;
  return TowerKey{false, x, y};
}

int spin_height_h(const HeightField2D& f, int x, int y) {
  return (f.grid[x][y + 1] + f.grid[x + 1][y + 1] - 1) / 2;
}
int spin_height_v(const HeightField2D& f, int x, int y) {
  return (f.grid[x + 1][y] + f.grid[x + 1][y + 1] - 1) / 2;
}

std::map<TowerKey, TowerRange> tower_ranges(int L) {
  std::map<TowerKey, TowerRange> ranges;
  bool first = true;
  for (const auto& surf : enumerate_surfaces(L)) {
    HeightField2D f = height_field(surf);
    auto fold = [&](bool horiz, int x, int y, int h) {
      auto& r = ranges[{horiz, x, y}];
      if (first) {
        r = {h, h};
        return;
      }
      r.bottom = std::min(r.bottom, h);
      r.top = std::max(r.top, h);
    };
    for (int x = 0; x < L; ++x)
      for (int y = 0; y <= L - 2; ++y) fold(true, x, y, L / 2 - spin_height_h(f, x, y));
    for (int x = 0; x <= L - 2; ++x)
      for (int y = 0; y < L; ++y) fold(false, x, y, L / 2 - spin_height_v(f, x, y));
    first = false;
  }
  // Interior towers of even (raised) chains reach the top level, where the
  // chain's fixed virtual rainbow passes over them.
  for (auto& [k, r] : ranges) {
    bool even_interior = k.horizontal ? (k.y % 2 == 0 && k.x >= 1 && k.x <= L - 2)
                                      : (k.x % 2 == 0 && k.y >= 1 && k.y <= L - 2);
    if (even_interior) r.top = L / 2;
  }
  return ranges;
}

struct RouteStop {
  TowerKey tower;
  const char* in_face;
  const char* out_face;
};

/// Two fixed rainbow lines per even chain at the top level; horizontal
/// chains contribute dashed components, vertical chains solid ones.
std::vector<std::pair<bool, std::vector<RouteStop>>> virtual_routes(int L) {
  std::vector<std::pair<bool, std::vector<RouteStop>>> routes;
  for (int ye = 0; ye <= L - 2; ye += 2) {
    std::vector<RouteStop> lower, upper;
    for (int x = 0; x < L; ++x) {
      lower.push_back({{true, x, ye}, "k3", "k2"});
      if (x <= L - 2) lower.push_back({{false, x, ye}, "k4", "k5"});
      upper.push_back({{true, x, ye}, "k4", "k5"});
      if (x <= L - 2) upper.push_back({{false, x, ye + 1}, "k3", "k2"});
    }
    routes.push_back({true, lower});
    routes.push_back({true, upper});
  }
  for (int xe = 0; xe <= L - 2; xe += 2) {
    std::vector<RouteStop> west, east;
    for (int y = 0; y < L; ++y) {
      west.push_back({{false, xe, y}, "k3", "k4"});
      if (y <= L - 2) west.push_back({{true, xe, y}, "k2", "k5"});
      east.push_back({{false, xe, y}, "k2", "k5"});
      if (y <= L - 2) east.push_back({{true, xe + 1, y}, "k3", "k4"});
    }
    routes.push_back({false, west});
    routes.push_back({false, east});
  }
  return routes;
}

}  // namespace

NetworkGraph build_network(int L, int s) {
  NetworkGraph net;
  AlphabetRef alpha = cube_alphabet(s);
  const SparseTensor tile_h = cube_tensor(s, true);
  const SparseTensor tile_v = cube_tensor(s, false);
  auto ranges = tower_ranges(L);

  std::map<std::tuple<bool, int, int, int>, int> node_at;
  for (const auto& [k, r] : ranges)
    for (int l = r.bottom; l <= r.top; ++l)
      node_at[{k.horizontal, k.x, k.y, l}] = net.add_node(
          k.horizontal ? tile_h : tile_v,
          std::string(k.horizontal ? "H" : "V") + std::to_string(k.x) + "," +
              std::to_string(k.y) + ".l" + std::to_string(l));

  // wall values at (tower, face) on the top level, from the virtual lines
  const int top = L / 2;
  std::map<std::tuple<bool, int, int, std::string>, std::pair<ArrowComp, ArrowComp>> wall;
  for (const auto& [h_family, route] : virtual_routes(L)) {
    auto exists = [&](const TowerKey& t) {
      return node_at.count({t.horizontal, t.x, t.y, top}) > 0;
    };
    auto add = [&](const TowerKey& t, const char* face) {
      auto& w = wall[{t.horizontal, t.x, t.y, face}];
      (h_family ? w.first : w.second) = ArrowComp::plus(1);
    };
    for (std::size_t i = 0; i < route.size(); ++i) {
      bool cur = exists(route[i].tower);
      bool prev = i > 0 && exists(route[i - 1].tower);
      if (cur && !prev) add(route[i].tower, route[i].in_face);
      if (!cur && prev) add(route[i - 1].tower, route[i - 1].out_face);
    }
    if (!route.empty() && exists(route.back().tower))
      add(route.back().tower, route.back().out_face);
  }

  auto cap = [&](int node, const std::string& leg, Symbol v) {
    SparseTensor d({{"k", alpha}});
    d.set({v}, QMonomial::one());
    net.connect(node, leg, net.add_node(d, "cap"), "k");
  };
  auto wall_symbol = [&](const TowerKey& k, int l, const char* face) {
    if (l == top) {
      auto it = wall.find({k.horizontal, k.x, k.y, face});
      if (it != wall.end()) return alpha->encode({it->second.first, it->second.second});
    }
    return alpha->encode({ArrowComp::zero(), ArrowComp::zero()});
  };

  for (int x = 0; x < L; ++x)
    for (int y = 0; y <= L - 2; ++y)
      net.mark_open(node_at[{true, x, y, ranges[{true, x, y}].bottom}], "k1",
                    LegRole::Physical);
  for (int x = 0; x <= L - 2; ++x)
    for (int y = 0; y < L; ++y)
      net.mark_open(node_at[{false, x, y, ranges[{false, x, y}].bottom}], "k1",
                    LegRole::Physical);

  struct Dir {
    const char* face;
    int dx, dy;
    const char* partner;
  };
  static const Dir east[2] = {{"k2", 1, -1, "k4"}, {"k5", 1, 1, "k3"}};
  static const Dir west[2] = {{"k3", -1, -1, "k5"}, {"k4", -1, 1, "k2"}};

  for (const auto& [k, r] : ranges) {
    auto [px, py] = tower_pos(k);
    for (int l = r.bottom; l <= r.top; ++l) {
      int n = node_at[{k.horizontal, k.x, k.y, l}];
      if (l < r.top)
        net.connect(n, "k6", node_at[{k.horizontal, k.x, k.y, l + 1}], "k1");
      else
        cap(n, "k6", alpha->encode({ArrowComp::zero(), ArrowComp::zero()}));
      for (const auto& d : east) {
        auto nb = tower_at(px + d.dx, py + d.dy, L);
        if (nb && node_at.count({nb->horizontal, nb->x, nb->y, l}))
          net.connect(n, d.face, node_at[{nb->horizontal, nb->x, nb->y, l}], d.partner);
        else
          cap(n, d.face, wall_symbol(k, l, d.face));
      }
      for (const auto& d : west) {
        auto nb = tower_at(px + d.dx, py + d.dy, L);
        if (!(nb && node_at.count({nb->horizontal, nb->x, nb->y, l})))
          cap(n, d.face, wall_symbol(k, l, d.face));
      }
    }
  }
  net.validate();
  return net;
}

std::vector<Symbol> physical_assignment(const SixVertexConfig& c) {
  AlphabetRef a = cube_alphabet(c.s);
  std::vector<Symbol> out;
  for (int x = 0; x < c.L; ++x)
    for (int y = 0; y <= c.L - 2; ++y) {
      ArrowComp d =
          c.sh_up[x][y] ? ArrowComp::plus2(c.ch[x][y]) : ArrowComp::minus2(c.ch[x][y]);
      out.push_back(a->encode({d, ArrowComp::zero()}));
    }
  for (int x = 0; x <= c.L - 2; ++x)
    for (int y = 0; y < c.L; ++y) {
      ArrowComp v =
          c.sv_up[x][y] ? ArrowComp::plus2(c.cv[x][y]) : ArrowComp::minus2(c.cv[x][y]);
      out.push_back(a->encode({ArrowComp::zero(), v}));
    }
  return out;
}

// ---------------------------------------------------------------------------
// cube tilings
// ---------------------------------------------------------------------------

CubeTiling tiling_from_config(const SixVertexConfig& c) {
  if (!is_ground_basis(c))
    throw std::invalid_argument("tiling_from_config: not a ground-basis configuration");
  auto ranges = tower_ranges(c.L);
  HeightField2D f = height_field(c);
  CubeTiling t;
  t.L = c.L;
  t.s = c.s;
  t.ch = c.ch;
  t.cv = c.cv;
  t.h.assign(c.L, std::vector<CubeTower>(c.L - 1));
  t.v.assign(c.L - 1, std::vector<CubeTower>(c.L));
  auto fill = [&](bool horiz, int x, int y, bool up, int color, int turn_level) {
    const auto& r = ranges[{horiz, x, y}];
    if (turn_level < r.bottom || turn_level > r.top)
      throw std::logic_error("tiling_from_config: turn outside tower");
    CubeTower tower;
    tower.bottom = r.bottom;
    tower.color = color;
    for (int l = r.bottom; l <= r.top; ++l)
      tower.types.push_back(l < turn_level ? (up ? 1 : 5)
                                           : (l == turn_level ? (up ? 2 : 4) : 3));
    return tower;
  };
  for (int x = 0; x < c.L; ++x)
    for (int y = 0; y <= c.L - 2; ++y)
      t.h[x][y] =
          fill(true, x, y, c.sh_up[x][y], c.ch[x][y], c.L / 2 - spin_height_h(f, x, y));
  for (int x = 0; x <= c.L - 2; ++x)
    for (int y = 0; y < c.L; ++y)
      t.v[x][y] =
          fill(false, x, y, c.sv_up[x][y], c.cv[x][y], c.L / 2 - spin_height_v(f, x, y));
  return t;
}

SixVertexConfig config_from_tiling(const CubeTiling& t) {
  SixVertexConfig c = SixVertexConfig::empty(t.L, t.s);
  c.ch = t.ch;
  c.cv = t.cv;
  auto read = [&](const CubeTower& tower) {
    int turns = 0;
    bool seen_turn = false, up = true;
    for (int ty : tower.types) {
      if (ty == 2 || ty == 4) {
        ++turns;
        up = ty == 2;
        seen_turn = true;
      } else if (ty == 3) {
        if (!seen_turn)
          throw std::invalid_argument("config_from_tiling: 4-arrow tile below the turn");
      } else {
        if (seen_turn)
          throw std::invalid_argument("config_from_tiling: vertical tile above the turn");
      }
    }
    if (turns != 1)
      throw std::invalid_argument("config_from_tiling: want exactly one turn per tower");
    return up;
  };
  for (int x = 0; x < t.L; ++x)
    for (int y = 0; y <= t.L - 2; ++y) c.sh_up[x][y] = read(t.h[x][y]);
  for (int x = 0; x <= t.L - 2; ++x)
    for (int y = 0; y < t.L; ++y) c.sv_up[x][y] = read(t.v[x][y]);
  height_field(c);  // throws on inconsistent reconstructions
  return c;
}

std::vector<SurjectivityEntry> local_surjectivity_report(int s) {
  std::vector<SurjectivityEntry> report;
  AlphabetRef alpha = cube_alphabet(s);
  const SparseTensor tile_h = cube_tensor(s, true);
  const SparseTensor tile_v = cube_tensor(s, false);
  const Symbol zz = alpha->encode({ArrowComp::zero(), ArrowComp::zero()});

  // keep one tile class only: 0 = vertical filler, 1 = turn, 2 = 4-arrow
  auto filtered = [&](const SparseTensor& t, bool horizontal, int cls, bool up) {
    SparseTensor out(t.legs());
    for (const auto& [idx, v] : t.entries()) {
      auto k1 = alpha->decode(idx[0]);
      const ArrowComp& own = horizontal ? k1[0] : k1[1];
      bool doubled = own.kind == ArrowComp::Plus2 || own.kind == ArrowComp::Minus2;
      bool has_side = idx[1] != zz || idx[2] != zz || idx[3] != zz || idx[4] != zz;
      int type = doubled ? (has_side ? 1 : 0) : 2;
      bool dir_ok = !doubled || (own.kind == ArrowComp::Plus2) == up;
      if (type == cls && dir_ok) out.set(idx, v);
    }
    return out;
  };

  for (int pat = 0; pat < 16; ++pat) {
    const bool n_up = pat & 1, s_up = pat & 2, e_up = pat & 4, w_up = pat & 8;
    SurjectivityEntry entry;
    entry.pattern = pat;
    entry.ice = (iup(s_up) - iup(n_up) - iup(w_up) + iup(e_up)) == 0;

    bool any = false;
    for (int mask = 0; mask < 16 && !any; ++mask) {
      struct T {
        bool horiz;
        int px, py;
        bool up;
        int turn;
      };
      const T towers[4] = {{true, 0, 1, n_up, (mask & 1) ? 2 : 1},
                           {true, 0, -1, s_up, (mask & 2) ? 2 : 1},
                           {false, 1, 0, e_up, (mask & 4) ? 2 : 1},
                           {false, -1, 0, w_up, (mask & 8) ? 2 : 1}};
      NetworkGraph net;
      std::map<std::tuple<int, int, int>, int> ids;  // (px, py, level)
      bool feasible = true;
      for (const auto& t : towers) {
        for (int l = 1; l <= 2 && feasible; ++l) {
          int cls = l < t.turn ? 0 : (l == t.turn ? 1 : 2);
          SparseTensor ft = filtered(t.horiz ? tile_h : tile_v, t.horiz, cls, t.up);
          // fix the physical value on the bottom tile right away
          if (l == 1) {
            ArrowComp own = t.up ? ArrowComp::plus2(1) : ArrowComp::minus2(1);
            Symbol phys = t.horiz ? alpha->encode({own, ArrowComp::zero()})
                                  : alpha->encode({ArrowComp::zero(), own});
            ft = ft.slice(0, phys);
          }
          if (ft.nnz() == 0) {
            feasible = false;
            break;
          }
          ids[{t.px, t.py, l}] = net.add_node(ft);
        }
        if (!feasible) break;
      }
      if (!feasible) continue;
      for (int l = 1; l <= 2; ++l) {
        for (const auto& t : towers) {
          int n0 = ids[{t.px, t.py, l}];
          auto se = ids.find({t.px + 1, t.py - 1, l});
          if (se != ids.end()) net.connect(n0, "k2", se->second, "k4");
          else net.mark_open(n0, "k2", LegRole::Boundary);
          auto ne = ids.find({t.px + 1, t.py + 1, l});
          if (ne != ids.end()) net.connect(n0, "k5", ne->second, "k3");
          else net.mark_open(n0, "k5", LegRole::Boundary);
          if (!ids.count({t.px - 1, t.py - 1, l})) net.mark_open(n0, "k3", LegRole::Boundary);
          if (!ids.count({t.px - 1, t.py + 1, l})) net.mark_open(n0, "k4", LegRole::Boundary);
        }
      }
      for (const auto& t : towers) {
        net.connect(ids[{t.px, t.py, 1}], "k6", ids[{t.px, t.py, 2}], "k1");
        net.mark_open(ids[{t.px, t.py, 2}], "k6", LegRole::Boundary);
      }
      if (net.contract().nnz() > 0) any = true;
    }
    entry.tiled = any;
    report.push_back(entry);
  }
  return report;
}

// ---------------------------------------------------------------------------
// annihilation
// ---------------------------------------------------------------------------

AnnihilationReport verify_annihilation(int L, int s, double q) {
  WeightedState gs = ground_state(L, s, q);
  AnnihilationReport rep;
  const double nrm = 1.0 / std::sqrt(1.0 / (q * q) + q * q);

  auto check = [&](const WeightedState& res) {
    rep.max_residual = std::max(rep.max_residual, res.norm());
    rep.terms_checked++;
  };

  // ice rule and boundary term are diagonal
  for (const auto& [k, v] : gs.terms) {
    SixVertexConfig c = from_label(k, L, s);
    auto sh = [&](int x, int y) {
      if (y < 0 || y > L - 2) return iup(fict_sh_up(x));
      return iup(c.sh_up[x][y]);
    };
    auto sv = [&](int x, int y) {
      if (x < 0 || x > L - 2) return iup(fict_sv_up(y));
      return iup(c.sv_up[x][y]);
    };
    double h0 = 0;
    for (int x = 0; x < L; ++x)
      for (int y = 0; y < L; ++y) {
        double d = 0.5 * (sh(x, y - 1) - sh(x, y) - sv(x - 1, y) + sv(x, y));
        h0 += d * d;
      }
    rep.max_h0 = std::max(rep.max_h0, std::abs(h0 * v));
    rep.max_boundary = std::max(rep.max_boundary, std::abs(boundary_term_value(c) * v));
  }
  rep.terms_checked += 2;
  rep.max_residual = std::max({rep.max_residual, rep.max_h0, rep.max_boundary});

  // correlated swapping term: plaquettes and variants whose 6-spin window is
  // fully physical
  for (int x = 0; x <= L - 2; ++x)
    for (int y = 0; y <= L - 2; ++y)
      for (int j = 1; j <= 4; ++j) {
        const bool h_right = (j - 1) & 1, v_above = (j - 1) & 2;
        const int mhx = h_right ? x + 2 : x - 1, mvy = v_above ? y + 2 : y - 1;
        if (mhx < 0 || mhx > L - 1 || mvy < 0 || mvy > L - 1) continue;
        check(apply_local_operator(gs, [&](const BasisLabel& k) {
          std::vector<std::pair<BasisLabel, double>> out;
          SixVertexConfig c = from_label(k, L, s);
          auto moved = fredkin_move_2d(c, x, y, j);
          if (!moved) return out;
          bool peak = c.sh_up[x][y] && !c.sh_up[x + 1][y];
          double self = peak ? nrm / q : -nrm * q;
          double other = peak ? -nrm * q : nrm / q;
          out.push_back({k, self * self});
          out.push_back({to_label(*moved), self * other});
          return out;
        }));
      }

  // color mixing on every chain
  auto color_terms = [&](bool horizontal, int chain) {
    for (int p = 0; p + 1 < L; ++p) {
      check(apply_local_operator(gs, [&](const BasisLabel& k) {
        std::vector<std::pair<BasisLabel, double>> out;
        SixVertexConfig c = from_label(k, L, s);
        auto up = [&](int t) { return horizontal ? c.sh_up[t][chain] : c.sv_up[chain][t]; };
        auto col = [&](int t) { return horizontal ? c.ch[t][chain] : c.cv[chain][t]; };
        if (up(p) && !up(p + 1) && col(p) != col(p + 1)) out.push_back({k, 1.0});
        return out;
      }));
      check(apply_local_operator(gs, [&](const BasisLabel& k) {
        std::vector<std::pair<BasisLabel, double>> out;
        SixVertexConfig c = from_label(k, L, s);
        auto up = [&](int t) { return horizontal ? c.sh_up[t][chain] : c.sv_up[chain][t]; };
        auto col = [&](int t) { return horizontal ? c.ch[t][chain] : c.cv[chain][t]; };
        if (!(up(p) && !up(p + 1)) || col(p) != col(p + 1)) return out;
        out.push_back({k, static_cast<double>(s)});
        for (int c2 = 1; c2 <= s; ++c2) {
          SixVertexConfig m = c;
          if (horizontal) {
            m.ch[p][chain] = c2;
            m.ch[p + 1][chain] = c2;
          } else {
            m.cv[chain][p] = c2;
            m.cv[chain][p + 1] = c2;
          }
          out.push_back({to_label(m), -1.0});
        }
        return out;
      }));
    }
  };
  for (int y = 0; y <= L - 2; ++y) color_terms(true, y);
  for (int x = 0; x <= L - 2; ++x) color_terms(false, x);
  return rep;
}

// ---------------------------------------------------------------------------
// gauge identity
// ---------------------------------------------------------------------------

bool gauge_identity_check(double q, double alpha, bool perturb_h3, int s) {
  (void)q;
  AlphabetRef a = cube_alphabet(s);
  for (bool horizontal : {true, false}) {
    SparseTensor t = cube_tensor(s, horizontal, perturb_h3 && horizontal ? 12 : 6);
    for (const auto& [idx, w] : t.entries()) {
      int g[6];
      int side_units = 0;
      for (int leg = 0; leg < 6; ++leg) {
        auto comps = a->decode(idx[leg]);
        const ArrowComp& own = horizontal ? comps[0] : comps[1];
        g[leg] = own.units();
        if (leg >= 1 && leg <= 4) side_units += std::abs(own.units());
      }
      // pulling t(alpha) = diag(q^(a/2), q^(a/4), 1, q^(-a/2)) through the
      // tensor: the exponent picked up at k1 must match the one released on
      // the remaining legs, with minus signs on the own-family incoming
      // side faces
      int rhs = horizontal ? g[5] + g[1] + g[4] - g[2] - g[3]
                           : g[5] + g[3] + g[4] - g[1] - g[2];
      if (alpha != 0.0 && g[0] != rhs) return false;
      // the weights themselves: w = q^(side-arrow units / 8)
      if (w.exp12 * 2 != 3 * side_units) return false;
    }
  }
  return true;
}

bool move_graph_connected(int L, int s) {
  auto basis = enumerate_ground_basis(L, s);
  std::map<BasisLabel, int> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[to_label(basis[i])] = static_cast<int>(i);
  std::vector<bool> seen(basis.size(), false);
  std::deque<int> todo{0};
  seen[0] = true;
  std::size_t reached = 1;
  auto visit = [&](const SixVertexConfig& c) {
    auto it = index.find(to_label(c));
    if (it == index.end()) return;
    if (!seen[it->second]) {
      seen[it->second] = true;
      ++reached;
      todo.push_back(it->second);
    }
  };
  while (!todo.empty()) {
    const SixVertexConfig c = basis[todo.front()];
    todo.pop_front();
    for (int x = 0; x <= L - 2; ++x)
      for (int y = 0; y <= L - 2; ++y)
        for (int j = 1; j <= 4; ++j)
          if (auto m = fredkin_move_2d(c, x, y, j)) visit(*m);
    auto recolor = [&](bool horizontal, int chain) {
      for (int p = 0; p + 1 < L; ++p) {
        bool upa = horizontal ? c.sh_up[p][chain] : c.sv_up[chain][p];
        bool upb = horizontal ? c.sh_up[p + 1][chain] : c.sv_up[chain][p + 1];
        int ca = horizontal ? c.ch[p][chain] : c.cv[chain][p];
        int cb = horizontal ? c.ch[p + 1][chain] : c.cv[chain][p + 1];
        if (!(upa && !upb) || ca != cb) continue;
        for (int c2 = 1; c2 <= s; ++c2) {
          if (c2 == ca) continue;
          SixVertexConfig m = c;
          if (horizontal) {
            m.ch[p][chain] = c2;
            m.ch[p + 1][chain] = c2;
          } else {
            m.cv[chain][p] = c2;
            m.cv[chain][p + 1] = c2;
          }
          visit(m);
        }
      }
    };
    for (int y = 0; y <= L - 2; ++y) recolor(true, y);
    for (int x = 0; x <= L - 2; ++x) recolor(false, x);
  }
  return reached == basis.size();
}

}  // namespace holo::sixv
