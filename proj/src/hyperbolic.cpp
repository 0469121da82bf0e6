#include "flatfront/hyperbolic.hpp"

#include <cmath>
#include <stdexcept>

namespace flatfront {

SL2 renormalize(const SL2& e, double drift) {
  cplx det = e.det();
  if (std::abs(det - 1.0) <= drift) return e;
  return (1.0 / std::sqrt(det)) * e;
}

bool HermPoint::is_valid(double herm_tol, double det_tol) const {
  Mat2 diff = x_ - x_.adjoint();
  double scale = 1.0 + x_.norm();
  if (diff.norm() > herm_tol * scale) return false;
  if (std::abs(x_.det() - 1.0) > det_tol * scale * scale) return false;
  return x_.trace().real() > 0.0;
}

double minkowski_inner(const Mat2& x, const Mat2& y) {
  // polarization of <X,X> = -det X
  return -0.5 * ((x + y).det() - x.det() - y.det()).real();
}

double minkowski_inner(const MinkowskiVec& x, const MinkowskiVec& y) {
  return -x.x0 * y.x0 + x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3;
}

HermPoint herm_from_lift(const SL2& e) { return HermPoint(e * e.adjoint()); }

MinkowskiVec to_minkowski(const Mat2& x) {
  return {0.5 * (x.a + x.d).real(), x.b.real(), x.b.imag(), 0.5 * (x.a - x.d).real()};
}

Mat2 from_minkowski(const MinkowskiVec& v) {
  return {cplx(v.x0 + v.x3), cplx(v.x1, v.x2), cplx(v.x1, -v.x2), cplx(v.x0 - v.x3)};
}

Vec3 to_ball(const HermPoint& p) {
  MinkowskiVec v = to_minkowski(p.matrix());
  double s = 1.0 / (1.0 + v.x0);
  return {v.x1 * s, v.x2 * s, v.x3 * s};
}

Vec3 to_halfspace(const HermPoint& p) {
  const Mat2& x = p.matrix();
  double x22 = x.d.real();
  cplx w = x.b / x22;
  return {w.real(), w.imag(), 1.0 / x22};
}

Mat2 cross(const Mat2& x, const Mat2& y, const HermPoint& p, double tangency_tol) {
  const Mat2& pm = p.matrix();
  double sx = 1.0 + x.norm() * pm.norm();
  double sy = 1.0 + y.norm() * pm.norm();
  if (std::abs(minkowski_inner(x, pm)) > tangency_tol * sx ||
      std::abs(minkowski_inner(y, pm)) > tangency_tol * sy)
    throw std::invalid_argument("cross: arguments are not tangent at p");
  Mat2 pinv = pm.inverse();
  return cplx(0.0, 0.5) * (x * pinv * y - y * pinv * x);
}

Mat2 unit_normal(const SL2& e) { return e * Mat2::diag(1.0, -1.0) * e.adjoint(); }

HermPoint parallel_point(const HermPoint& f, const Mat2& nu, double t) {
  return HermPoint(std::cosh(t) * f.matrix() + std::sinh(t) * nu);
}

Mat2 parallel_normal(const HermPoint& f, const Mat2& nu, double t) {
  return std::sinh(t) * f.matrix() + std::cosh(t) * nu;
}

}  // namespace flatfront
