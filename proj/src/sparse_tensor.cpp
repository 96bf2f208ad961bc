#include "holo/sparse_tensor.hpp"

#include <map>

namespace holo {

SparseTensor contract_pair(const SparseTensor& a, const SparseTensor& b,
                           const std::vector<std::pair<int, int>>& pairs) {
  std::vector<bool> a_paired(a.rank(), false), b_paired(b.rank(), false);
  for (const auto& [ia, ib] : pairs) {
    if (ia < 0 || ia >= a.rank() || ib < 0 || ib >= b.rank())
      throw std::invalid_argument("contract_pair: leg index out of range");
    if (a_paired[ia] || b_paired[ib])
      throw std::invalid_argument("contract_pair: leg paired twice");
    if (!a.legs()[ia].alphabet->same_as(*b.legs()[ib].alphabet))
      throw std::invalid_argument("contract_pair: alphabet mismatch on legs " +
                                  a.legs()[ia].name + " / " + b.legs()[ib].name);
    a_paired[ia] = true;
    b_paired[ib] = true;
  }

  std::vector<int> a_free, b_free;
  for (int i = 0; i < a.rank(); ++i)
    if (!a_paired[i]) a_free.push_back(i);
  for (int i = 0; i < b.rank(); ++i)
    if (!b_paired[i]) b_free.push_back(i);

  std::vector<Leg> out_legs;
  for (int i : a_free) out_legs.push_back(a.legs()[i]);
  for (int i : b_free) out_legs.push_back(b.legs()[i]);
  SparseTensor out(std::move(out_legs));

  // Bucket b's entries by the shared-index key so the convolution is a
  // join instead of a full cross product.
  std::map<SparseTensor::Index, std::vector<const std::pair<const SparseTensor::Index, QMonomial>*>>
      b_buckets;
  for (const auto& e : b.entries()) {
    SparseTensor::Index key(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) key[k] = e.first[pairs[k].second];
    b_buckets[key].push_back(&e);
  }

  SparseTensor::Index out_idx(a_free.size() + b_free.size());
  for (const auto& ea : a.entries()) {
    SparseTensor::Index key(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) key[k] = ea.first[pairs[k].first];
    auto bit = b_buckets.find(key);
    if (bit == b_buckets.end()) continue;
    for (std::size_t i = 0; i < a_free.size(); ++i) out_idx[i] = ea.first[a_free[i]];
    for (const auto* eb : bit->second) {
      for (std::size_t i = 0; i < b_free.size(); ++i)
        out_idx[a_free.size() + i] = eb->first[b_free[i]];
      out.accumulate(out_idx, ea.second * eb->second);
    }
  }
  return out;
}

}  // namespace holo
