#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holo/qmono.hpp"

namespace holo {

/// Canonical configuration label; each model module provides an injective
/// serializer into this.
using BasisLabel = std::string;

/// Sparse superposition with exact monomial amplitudes (fixed symbolic q).
class ExactState {
 public:
  std::map<BasisLabel, QMonomial> terms;

  void add(const BasisLabel& k, const QMonomial& v) {
    if (v.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) terms[k] = v;
    else {
      QMonomial s = it->second + v;
      if (s.is_zero()) terms.erase(it);
      else it->second = s;
    }
  }
};

/// Sparse superposition with numeric amplitudes.
class WeightedState {
 public:
  std::map<BasisLabel, double> terms;
  bool normalized = false;

  static WeightedState from_exact(const ExactState& s, double q) {
    WeightedState w;
    for (const auto& [k, v] : s.terms) {
      double a = v.eval(q);
      if (a != 0.0) w.terms[k] = a;
    }
    return w;
  }

  double norm2() const {
    double n = 0;
    for (const auto& [k, v] : terms) n += v * v;
    return n;
  }
  double norm() const { return std::sqrt(norm2()); }

  double dot(const WeightedState& o) const {
    const auto& small = terms.size() <= o.terms.size() ? terms : o.terms;
    const auto& big = terms.size() <= o.terms.size() ? o.terms : terms;
    double d = 0;
    for (const auto& [k, v] : small) {
      auto it = big.find(k);
      if (it != big.end()) d += v * it->second;
    }
    return d;
  }

  WeightedState& operator+=(const WeightedState& o) {
    for (const auto& [k, v] : o.terms) {
      double& t = terms[k];
      t += v;
      if (t == 0.0) terms.erase(k);
    }
    normalized = false;
    return *this;
  }
  WeightedState& operator*=(double c) {
    for (auto& [k, v] : terms) v *= c;
    normalized = false;
    return *this;
  }
};

/// Unit 2-norm copy.  Throws on the zero state.
WeightedState normalize(const WeightedState& s);

struct SchmidtSpectrum {
  /// (left-key, p) with p the squared Schmidt coefficient, sorted by
  /// descending p; degenerate values ordered by left-key.
  std::vector<std::pair<BasisLabel, double>> coefficients;

  double sum() const {
    double t = 0;
    for (auto& [k, p] : coefficients) t += p;
    return t;
  }
  double entropy() const {
    double e = 0;
    for (auto& [k, p] : coefficients)
      if (p > 1e-300) e -= p * std::log(p);
    return e;
  }
};

/// Splits a basis label into (left, right) parts; must be injective.
using LabelSplitter = std::function<std::pair<BasisLabel, BasisLabel>(const BasisLabel&)>;

/// Schmidt spectrum of a bipartition: groups amplitudes into the left x right
/// matrix and returns the squared singular values normalized to sum 1
/// (Gram-matrix eigendecomposition; the grouped matrix is small at desk
/// scale).
SchmidtSpectrum schmidt_spectrum(const WeightedState& state, const LabelSplitter& split);

/// A local operator as a sparse list of |ket><bra| entries over full basis
/// labels produced by a model-supplied pattern expansion: for each state
/// term, `expand` lists the (target-label, coefficient) pairs of O applied
/// to that basis vector.
using LocalOpExpansion =
    std::function<std::vector<std::pair<BasisLabel, double>>(const BasisLabel&)>;

WeightedState apply_local_operator(const WeightedState& state, const LocalOpExpansion& expand);

}  // namespace holo
