#include "holo/statevec.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace holo {

WeightedState normalize(const WeightedState& s) {
  double n = s.norm();
  if (n == 0.0) throw std::domain_error("normalize: zero state");
  WeightedState out = s;
  for (auto& [k, v] : out.terms) v /= n;
  out.normalized = true;
  return out;
}

SchmidtSpectrum schmidt_spectrum(const WeightedState& state, const LabelSplitter& split) {
  // Group into the left x right amplitude matrix.
  std::map<BasisLabel, int> lidx, ridx;
  std::map<std::pair<int, int>, double> mat;
  std::vector<BasisLabel> lkeys;
  for (const auto& [k, v] : state.terms) {
    auto [l, r] = split(k);
    auto li = lidx.find(l);
    if (li == lidx.end()) {
      li = lidx.emplace(l, static_cast<int>(lkeys.size())).first;
      lkeys.push_back(l);
    }
    auto ri = ridx.find(r);
    if (ri == ridx.end()) ri = ridx.emplace(r, static_cast<int>(ridx.size())).first;
    auto key = std::make_pair(li->second, ri->second);
    auto it = mat.find(key);
    if (it != mat.end() && it->second != v)
      throw std::invalid_argument("schmidt_spectrum: splitter not injective");
    mat[key] = v;
  }

  const int nl = static_cast<int>(lidx.size());
  const int nr = static_cast<int>(ridx.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nl, nr);
  for (const auto& [ij, v] : mat) M(ij.first, ij.second) = v;

  double total = M.squaredNorm();
  if (total == 0.0) throw std::domain_error("schmidt_spectrum: zero state");

  Eigen::MatrixXd G = M * M.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("schmidt_spectrum: eigensolver failed");

  SchmidtSpectrum spec;
  for (int i = 0; i < nl; ++i) {
    double p = es.eigenvalues()(i) / total;
    if (p < 1e-14) continue;
    // Deterministic key for possibly degenerate levels: dominant left basis
    // label of the eigenvector.
    int arg = 0;
    es.eigenvectors().col(i).cwiseAbs().maxCoeff(&arg);
    spec.coefficients.push_back({lkeys[arg], p});
  }
  std::sort(spec.coefficients.begin(), spec.coefficients.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return spec;
}

WeightedState apply_local_operator(const WeightedState& state, const LocalOpExpansion& expand) {
  WeightedState out;
  for (const auto& [k, v] : state.terms) {
    for (const auto& [target, coeff] : expand(k)) {
      if (coeff == 0.0) continue;
      double& t = out.terms[target];
      t += coeff * v;
      if (t == 0.0) out.terms.erase(target);
    }
  }
  return out;
}

}  // namespace holo
