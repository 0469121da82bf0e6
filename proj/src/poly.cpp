#include "flatfront/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace flatfront {

namespace {

cplx horner(const std::vector<cplx>& c, cplx z, cplx* deriv) {
  cplx p = 0.0, dp = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  if (deriv) *deriv = dp;
  return p;
}

}  // namespace

std::vector<cplx> polynomial_roots(std::vector<cplx> c) {
  double scale = 0.0;
  for (cplx x : c) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return {};
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  std::vector<cplx> roots;
  // zero roots are exact; strip them to keep the companion matrix well scaled
  std::size_t lead = 0;
  while (lead < c.size() && std::abs(c[lead]) <= 1e-14 * scale) ++lead;
  for (std::size_t k = 0; k < lead; ++k) roots.emplace_back(0.0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return roots;

  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  for (int i = 0; i < deg; ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      cplx dp;
      cplx p = horner(c, z, &dp);
      if (dp == 0.0) break;
      cplx step = p / dp;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6 * (1.0 + std::abs(z))) break;
      z -= step;
    }
    roots.push_back(z);
  }
  // a multiple root splits into a small cluster; its mean is far more accurate
  std::vector<cplx> merged;
  std::vector<bool> taken(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (taken[i]) continue;
    cplx sum = roots[i];
    int count = 1;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!taken[j] && std::abs(roots[j] - roots[i]) < 1e-5 * (1.0 + std::abs(roots[i]))) {
        taken[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    for (int k = 0; k < count; ++k) merged.push_back(sum / static_cast<double>(count));
  }
  return merged;
}

std::vector<cplx> dedupe_points(const std::vector<cplx>& pts, double tol) {
  std::vector<cplx> out;
  for (cplx p : pts)
    if (std::none_of(out.begin(), out.end(), [&](cplx q) { return std::abs(p - q) < tol; })) out.push_back(p);
  return out;
}

}  // namespace flatfront
