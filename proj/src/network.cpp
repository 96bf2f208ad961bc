#include "holo/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace holo {

void NetworkGraph::connect(int node_a, const std::string& leg_a, int node_b,
                           const std::string& leg_b) {
  const auto& la = nodes_.at(node_a).legs()[nodes_.at(node_a).leg_index(leg_a)];
  const auto& lb = nodes_.at(node_b).legs()[nodes_.at(node_b).leg_index(leg_b)];
  if (!la.alphabet->same_as(*lb.alphabet))
    throw std::invalid_argument("NetworkGraph::connect: alphabet mismatch " +
                                leg_a + " / " + leg_b);
  edges_.push_back({{node_a, leg_a}, {node_b, leg_b}});
}

void NetworkGraph::mark_open(int node, const std::string& leg, LegRole role) {
  nodes_.at(node).leg_index(leg);  // existence check
  open_.push_back({{node, leg}, role});
}

void NetworkGraph::validate() const {
  std::map<NodeLegRef, int> uses;
  for (const auto& [a, b] : edges_) {
    uses[a]++;
    uses[b]++;
  }
  for (const auto& o : open_) uses[o.ref]++;
  for (int n = 0; n < node_count(); ++n) {
    for (const auto& leg : nodes_[n].legs()) {
      auto it = uses.find({n, leg.name});
      int c = it == uses.end() ? 0 : it->second;
      if (c != 1)
        throw std::logic_error("NetworkGraph: leg " + std::to_string(n) + ":" +
                               leg.name + " used " + std::to_string(c) +
                               " times (want exactly 1)");
    }
  }
}

namespace {

struct Live {
  SparseTensor tensor;
  // Open legs carried along: original (node, leg) so the final permutation
  // can be recovered; position i corresponds to tensor leg i.
  std::vector<NodeLegRef> origin;
  int id;  // smallest original node id merged into this tensor
};

}  // namespace

std::vector<std::pair<int, int>> NetworkGraph::plan_contraction() const {
  // Simulate the greedy contraction on entry counts only.
  struct Sim {
    std::size_t nnz;
    int id;
    bool alive;
  };
  std::vector<Sim> sim;
  sim.reserve(nodes_.size());
  for (int i = 0; i < node_count(); ++i)
    sim.push_back({nodes_[i].nnz(), i, true});

  // edge multiplicity and shared alphabet volume between live groups
  std::map<std::pair<int, int>, double> shared_vol;
  auto group_of = std::vector<int>(node_count());
  for (int i = 0; i < node_count(); ++i) group_of[i] = i;
  auto canon = [&](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
  for (const auto& [ea, eb] : edges_) {
    int ga = group_of[ea.node], gb = group_of[eb.node];
    if (ga == gb) continue;
    const auto& leg = nodes_[ea.node].legs()[nodes_[ea.node].leg_index(ea.leg)];
    auto key = canon(ga, gb);
    double v = static_cast<double>(leg.alphabet->size());
    auto it = shared_vol.find(key);
    if (it == shared_vol.end()) shared_vol[key] = v;
    else it->second *= v;
  }

  std::vector<std::pair<int, int>> plan;
  int alive = node_count();
  while (alive > 1) {
    double best = std::numeric_limits<double>::infinity();
    int ba = -1, bb = -1;
    bool best_connected = false;
    for (int a = 0; a < node_count(); ++a) {
      if (!sim[a].alive) continue;
      for (int b = a + 1; b < node_count(); ++b) {
        if (!sim[b].alive) continue;
        auto it = shared_vol.find({a, b});
        bool connected = it != shared_vol.end();
        double est = static_cast<double>(sim[a].nnz) * static_cast<double>(sim[b].nnz);
        if (connected) est /= it->second;
        if (connected && !best_connected) {
          best = est; ba = a; bb = b; best_connected = true;
        } else if (connected == best_connected && est < best) {
          best = est; ba = a; bb = b;
        }
      }
    }
    plan.push_back({sim[ba].id, sim[bb].id});
    // merge bb into ba
    sim[ba].nnz = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::min<double>(best, 1e18)));
    sim[ba].id = std::min(sim[ba].id, sim[bb].id);
    sim[bb].alive = false;
    for (int c = 0; c < node_count(); ++c) {
      if (!sim[c].alive || c == ba) continue;
      auto itb = shared_vol.find(canon(bb, c));
      if (itb != shared_vol.end()) {
        auto key = canon(ba, c);
        auto ita = shared_vol.find(key);
        if (ita == shared_vol.end()) shared_vol[key] = itb->second;
        else ita->second *= itb->second;
      }
    }
    --alive;
  }
  return plan;
}

SparseTensor NetworkGraph::contract(Stats* stats) const {
  if (node_count() == 0) return SparseTensor::scalar(QMonomial::one());
  validate();

  std::map<NodeLegRef, LegRole> open_role;
  for (const auto& o : open_) open_role[o.ref] = o.role;

  // Live tensors indexed by representative original node id.
  std::map<int, Live> live;
  for (int i = 0; i < node_count(); ++i) {
    Live l;
    l.tensor = nodes_[i];
    l.id = i;
    for (const auto& leg : nodes_[i].legs()) l.origin.push_back({i, leg.name});
    live.emplace(i, std::move(l));
  }
  // Map original (node, leg) -> current representative id.
  std::map<int, int> rep;
  for (int i = 0; i < node_count(); ++i) rep[i] = i;

  Stats st;
  for (const auto& [pa, pb] : plan_contraction()) {
    int ra = rep[pa], rb = rep[pb];
    Live& A = live.at(ra);
    Live& B = live.at(rb);
    // Collect edges between the two groups.
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [ea, eb] : edges_) {
      int na = rep[ea.node], nb = rep[eb.node];
      NodeLegRef fa = ea, fb = eb;
      if (na == rb && nb == ra) { std::swap(na, nb); std::swap(fa, fb); }
      if (na != ra || nb != rb) continue;
      int ia = -1, ib = -1;
      for (std::size_t i = 0; i < A.origin.size(); ++i)
        if (A.origin[i] == fa) ia = static_cast<int>(i);
      for (std::size_t i = 0; i < B.origin.size(); ++i)
        if (B.origin[i] == fb) ib = static_cast<int>(i);
      if (ia >= 0 && ib >= 0) pairs.push_back({ia, ib});
    }
    SparseTensor merged = contract_pair(A.tensor, B.tensor, pairs);
    Live out;
    out.tensor = std::move(merged);
    out.id = std::min(A.id, B.id);
    std::vector<bool> ap(A.origin.size(), false), bp(B.origin.size(), false);
    for (auto& [ia, ib] : pairs) { ap[ia] = true; bp[ib] = true; }
    for (std::size_t i = 0; i < A.origin.size(); ++i)
      if (!ap[i]) out.origin.push_back(A.origin[i]);
    for (std::size_t i = 0; i < B.origin.size(); ++i)
      if (!bp[i]) out.origin.push_back(B.origin[i]);
    st.peak_entries = std::max(st.peak_entries, out.tensor.nnz());
    st.steps++;
    int keep = std::min(ra, rb);
    live.erase(ra);
    live.erase(rb);
    live.emplace(keep, std::move(out));
    for (auto& [orig, r] : rep)
      if (r == ra || r == rb) r = keep;
  }

  SparseTensor result = live.begin()->second.tensor;
  const auto& origin = live.begin()->second.origin;

  // Permute result legs into the declared open-leg order.
  std::vector<int> perm;
  perm.reserve(open_.size());
  for (const auto& o : open_) {
    int pos = -1;
    for (std::size_t i = 0; i < origin.size(); ++i)
      if (origin[i] == o.ref) pos = static_cast<int>(i);
    if (pos < 0) throw std::logic_error("contract: open leg lost in contraction");
    perm.push_back(pos);
  }
  if (stats) *stats = st;
  return result.permuted(perm);
}

QMonomial NetworkGraph::evaluate_amplitude(const std::vector<Symbol>& physical,
                                           Stats* stats) const {
  NetworkGraph sliced;
  std::size_t pi = 0;
  // Slice physical legs off each node tensor, keep the rest of the graph.
  std::vector<SparseTensor> tensors;
  for (int i = 0; i < node_count(); ++i) tensors.push_back(nodes_[i]);
  for (const auto& o : open_) {
    if (o.role != LegRole::Physical) continue;
    if (pi >= physical.size())
      throw std::invalid_argument("evaluate_amplitude: too few symbols");
    SparseTensor& t = tensors[o.ref.node];
    int li = t.leg_index(o.ref.leg);
    if (physical[pi] >= t.legs()[li].alphabet->size())
      throw std::invalid_argument("evaluate_amplitude: symbol not in leg alphabet");
    t = t.slice(li, physical[pi]);
    ++pi;
  }
  if (pi != physical.size())
    throw std::invalid_argument("evaluate_amplitude: too many symbols");

  for (int i = 0; i < node_count(); ++i) sliced.add_node(tensors[i], placements_[i]);
  for (const auto& [a, b] : edges_) sliced.connect(a.node, a.leg, b.node, b.leg);
  for (const auto& o : open_)
    if (o.role == LegRole::Boundary) sliced.mark_open(o.ref.node, o.ref.leg, o.role);

  SparseTensor res = sliced.contract(stats);
  if (res.rank() != 0) throw std::logic_error("evaluate_amplitude: non-scalar result");
  return res.at({});
}

}  // namespace holo
