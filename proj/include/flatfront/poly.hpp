#pragma once

#include <complex>
#include <vector>

namespace flatfront {

using cplx = std::complex<double>;

/// Roots of sum c_k z^k (ascending coefficients), Newton-polished.
std::vector<cplx> polynomial_roots(std::vector<cplx> coeffs);

/// Removes points closer than tol to an earlier one.
std::vector<cplx> dedupe_points(const std::vector<cplx>& pts, double tol);

}  // namespace flatfront
