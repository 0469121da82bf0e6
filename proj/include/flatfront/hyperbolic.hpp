#pragma once

// Matrix model of hyperbolic 3-space: H^3 = SL(2,C)/SU(2) sitting inside
// Herm(2), identified with Minkowski space L^4 via
//   (x0,x1,x2,x3) <-> [[x0+x3, x1+i x2], [x1-i x2, x0-x3]].

#include <array>
#include <complex>

namespace flatfront {

using cplx = std::complex<double>;

/// Row-major complex 2x2 matrix.
struct Mat2 {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static Mat2 identity() { return {}; }
  static Mat2 diag(cplx p, cplx q) { return {p, 0.0, 0.0, q}; }

  cplx det() const { return a * d - b * c; }
  cplx trace() const { return a + d; }
  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
  Mat2 inverse() const {
    cplx k = 1.0 / det();
    return {d * k, -b * k, -c * k, a * k};
  }
  double norm() const {  // Frobenius
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend Mat2 operator*(const Mat2& x, cplx s) { return s * x; }
  Mat2& operator+=(const Mat2& y) { return *this = *this + y; }
};

/// SL(2,C) element. Same storage as Mat2; the name marks the unit-det contract.
using SL2 = Mat2;

/// Divide by a principal square root of det when it has drifted from 1.
SL2 renormalize(const SL2& e, double drift = 1e-12);

/// A point of H^3 in the Hermitian model (det 1, positive trace).
class HermPoint {
 public:
  HermPoint() = default;
  /// Wraps X without re-projecting; use is_valid() to check the invariants.
  explicit HermPoint(const Mat2& x) : x_(x) {}
  const Mat2& matrix() const { return x_; }
  bool is_valid(double herm_tol = 1e-12, double det_tol = 1e-9) const;

 private:
  Mat2 x_;
};

struct MinkowskiVec {
  double x0 = 1.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;
};

using Vec3 = std::array<double, 3>;

/// Lorentzian inner product of Hermitian matrices; <X,X> = -det X.
double minkowski_inner(const Mat2& x, const Mat2& y);
double minkowski_inner(const MinkowskiVec& x, const MinkowskiVec& y);

HermPoint herm_from_lift(const SL2& e);
MinkowskiVec to_minkowski(const Mat2& x);
Mat2 from_minkowski(const MinkowskiVec& v);
inline MinkowskiVec to_minkowski(const HermPoint& p) { return to_minkowski(p.matrix()); }

/// Poincare ball model: b = (x1,x2,x3)/(1+x0).
Vec3 to_ball(const HermPoint& p);
/// Upper half-space model (Re w, Im w, h) with w = X12/X22, h = 1/X22.
Vec3 to_halfspace(const HermPoint& p);

/// Hyperbolic cross product of tangent vectors X, Y at p.
/// Throws std::invalid_argument if X or Y is not tangent at p.
Mat2 cross(const Mat2& x, const Mat2& y, const HermPoint& p, double tangency_tol = 1e-9);

/// nu = E diag(1,-1) E^*.
Mat2 unit_normal(const SL2& e);

/// f_t = cosh(t) f + sinh(t) nu.
HermPoint parallel_point(const HermPoint& f, const Mat2& nu, double t);
/// Normal of the parallel surface: sinh(t) f + cosh(t) nu.
Mat2 parallel_normal(const HermPoint& f, const Mat2& nu, double t);

}  // namespace flatfront
