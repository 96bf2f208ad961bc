#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "holo/alphabet.hpp"
#include "holo/qmono.hpp"

namespace holo {

struct Leg {
  std::string name;
  AlphabetRef alphabet;
};

/// Sparse tensor over symbolic leg alphabets with exact monomial entries.
/// Entries are kept in a std::map so iteration order, and therefore every
/// contraction result, is byte-reproducible.
class SparseTensor {
 public:
  using Index = std::vector<Symbol>;

  SparseTensor() = default;
  explicit SparseTensor(std::vector<Leg> legs) : legs_(std::move(legs)) {}

  static SparseTensor scalar(const QMonomial& v) {
    SparseTensor t;
    if (!v.is_zero()) t.entries_[{}] = v;
    return t;
  }

  const std::vector<Leg>& legs() const { return legs_; }
  int rank() const { return static_cast<int>(legs_.size()); }
  const std::map<Index, QMonomial>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  int leg_index(const std::string& name) const {
    for (int i = 0; i < rank(); ++i)
      if (legs_[i].name == name) return i;
    throw std::invalid_argument("SparseTensor: no leg named " + name);
  }

  void set(const Index& idx, const QMonomial& v) {
    check_bounds(idx);
    if (v.is_zero()) entries_.erase(idx);
    else entries_[idx] = v;
  }

  /// Adds v into the entry, with exact monomial addition (throws on a
  /// mixed-exponent sum, see QMonomial).
  void accumulate(const Index& idx, const QMonomial& v) {
    if (v.is_zero()) return;
    check_bounds(idx);
    auto it = entries_.find(idx);
    if (it == entries_.end()) {
      entries_[idx] = v;
    } else {
      QMonomial s = it->second + v;
      if (s.is_zero()) entries_.erase(it);
      else it->second = s;
    }
  }

  QMonomial at(const Index& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? QMonomial::zero() : it->second;
  }

  /// Fixes one leg to a symbol and drops it.
  SparseTensor slice(int leg, Symbol value) const {
    std::vector<Leg> out_legs;
    for (int i = 0; i < rank(); ++i)
      if (i != leg) out_legs.push_back(legs_[i]);
    SparseTensor out(out_legs);
    for (const auto& [idx, v] : entries_) {
      if (idx[leg] != value) continue;
      Index oi;
      oi.reserve(idx.size() - 1);
      for (int i = 0; i < rank(); ++i)
        if (i != leg) oi.push_back(idx[i]);
      out.accumulate(oi, v);
    }
    return out;
  }

  /// Reorders legs into the given permutation (perm[i] = old position of
  /// new leg i).
  SparseTensor permuted(const std::vector<int>& perm) const {
    std::vector<Leg> out_legs(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out_legs[i] = legs_[perm[i]];
    SparseTensor out(std::move(out_legs));
    for (const auto& [idx, v] : entries_) {
      Index oi(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) oi[i] = idx[perm[i]];
      out.entries_[oi] = v;
    }
    return out;
  }

  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    if (a.rank() != b.rank()) return false;
    for (int i = 0; i < a.rank(); ++i)
      if (!a.legs_[i].alphabet->same_as(*b.legs_[i].alphabet)) return false;
    return a.entries_ == b.entries_;
  }

 private:
  void check_bounds(const Index& idx) const {
    if (idx.size() != legs_.size())
      throw std::invalid_argument("SparseTensor: index rank mismatch");
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (idx[i] >= legs_[i].alphabet->size())
        throw std::out_of_range("SparseTensor: symbol out of alphabet bounds");
  }

  std::vector<Leg> legs_;
  std::map<Index, QMonomial> entries_;
};

/// Contracts the listed leg pairs (indices into a and b).  Result legs are
/// the unpaired legs of a followed by those of b, in original order.
SparseTensor contract_pair(const SparseTensor& a, const SparseTensor& b,
                           const std::vector<std::pair<int, int>>& pairs);

}  // namespace holo
