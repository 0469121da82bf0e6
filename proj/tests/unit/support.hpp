#pragma once

#include <complex>
#include <random>
#include <vector>

#include "flatfront/domain.hpp"

namespace testing_support {

using flatfront::cplx;

/// Fixed-seed uniform points of a window that stay `margin` away from every point in `avoid`.
inline std::vector<cplx> random_points(const flatfront::Window& w, int count, const std::vector<cplx>& avoid = {},
                                       double margin = 0.1, unsigned seed = 12345) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(w.x0, w.x1), uy(w.y0, w.y1);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < count) {
    cplx z(ux(rng), uy(rng));
    bool ok = true;
    for (cplx a : avoid) ok = ok && std::abs(z - a) > margin;
    if (ok) out.push_back(z);
  }
  return out;
}

inline double rel_err(cplx got, cplx want) {
  double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got);
}

}  // namespace testing_support
