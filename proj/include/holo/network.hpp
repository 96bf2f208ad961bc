#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holo/sparse_tensor.hpp"

namespace holo {

enum class LegRole { Physical, Boundary };

struct NodeLegRef {
  int node = -1;
  std::string leg;
  friend bool operator==(const NodeLegRef& a, const NodeLegRef& b) {
    return a.node == b.node && a.leg == b.leg;
  }
  friend bool operator<(const NodeLegRef& a, const NodeLegRef& b) {
    return a.node != b.node ? a.node < b.node : a.leg < b.leg;
  }
};

struct OpenLeg {
  NodeLegRef ref;
  LegRole role = LegRole::Physical;
};

/// Placed tensor instances with internal leg pairings and the ordered list
/// of open legs.  Every tensor leg must end up in exactly one internal edge
/// or one open-leg entry; validate() checks that.
class NetworkGraph {
 public:
  int add_node(SparseTensor t, std::string placement = {}) {
    nodes_.push_back(std::move(t));
    placements_.push_back(std::move(placement));
    return static_cast<int>(nodes_.size()) - 1;
  }

  void connect(int node_a, const std::string& leg_a, int node_b, const std::string& leg_b);
  void mark_open(int node, const std::string& leg, LegRole role);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const SparseTensor& node(int i) const { return nodes_.at(i); }
  const std::string& placement(int i) const { return placements_.at(i); }
  const std::vector<std::pair<NodeLegRef, NodeLegRef>>& internal_edges() const {
    return edges_;
  }
  const std::vector<OpenLeg>& open_legs() const { return open_; }

  void validate() const;

  struct Stats {
    std::size_t peak_entries = 0;   // largest intermediate entry count
    std::size_t steps = 0;
  };

  /// Deterministic greedy pairwise-contraction plan.  Each step picks the
  /// pair of live nodes minimizing the intermediate size estimate
  /// |A|*|B| / prod(shared alphabet sizes); ties break on smallest node ids.
  /// Pairs sharing no edge are only considered when no connected pair is
  /// left (outer product of remaining components).
  std::vector<std::pair<int, int>> plan_contraction() const;

  /// Runs the plan.  Result legs are ordered as open_legs().
  SparseTensor contract(Stats* stats = nullptr) const;

  /// Fixes every physical open leg to the given symbols (in open-leg order,
  /// skipping boundary legs) and contracts to a scalar.
  QMonomial evaluate_amplitude(const std::vector<Symbol>& physical,
                               Stats* stats = nullptr) const;

 private:
  std::vector<SparseTensor> nodes_;
  std::vector<std::string> placements_;
  std::vector<std::pair<NodeLegRef, NodeLegRef>> edges_;
  std::vector<OpenLeg> open_;
};

}  // namespace holo
