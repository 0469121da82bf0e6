#pragma once

// Type C / type S test for fronts given only as sampled positions and unit
// normals on a (u,v) grid in a Euclidean chart.

#include <functional>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "flatfront/contour.hpp"
#include "flatfront/hyperbolic.hpp"
#include "flatfront/lift.hpp"

namespace flatfront {

/// Samples on the nodes of Domain(window, n): node (i,j) sits at u = x0 + i*hx, v = y0 + j*hy.
struct SampledMap {
  Window window;
  int n = 0;
  std::vector<Vec3> f;
  std::vector<Vec3> normal;

  Domain grid() const { return Domain(window, n); }
};

/// Reads rows "u,v,fx,fy,fz,nx,ny,nz" (one optional header line, any row
/// order). The (u,v) values must form a full uniform square grid.
/// Throws std::invalid_argument on malformed input.
SampledMap read_sampled_csv(std::istream& in);

/// Samples of a map given by a callback returning (f, nu).
SampledMap sample_map(const std::function<std::pair<Vec3, Vec3>(double u, double v)>& fn, const Window& w, int n);

/// Samples a flat front around a window of the z-plane, mapped to the Poincare ball.
/// The ball chart is conformal, so the normal is the normalised pushforward of nu.
SampledMap sample_front_in_ball(const LegendrianLift& lift, const Window& w, int n);

/// Maximum of |<f_u,nu>| + |<f_v,nu>| relative to |f_u| + |f_v|.
double front_condition_residual(const SampledMap& m);

/// lambda = <f_u x f_v, nu> at every node (central differences, one-sided on the border).
std::vector<double> lambda_field(const SampledMap& m);

struct NullSample {
  cplx gamma;     // point (u + i v)
  double s = 0;   // arclength
  cplx tangent;   // unit gamma'
  cplx eta;       // unit null direction, sign-aligned along the curve
  double det = 0; // det(gamma', eta)
  double grad_lambda = 0;
  double residual = 0;  // |df(eta)| / |df|
};

struct NullField {
  std::vector<NullSample> samples;
  bool closed = false;
};

class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Null directions along a polyline traced on the zero set of lambda.
NullField null_directions(const SampledMap& m, const Polyline& curve);

enum class GenericType { TypeC, TypeS, Neither, Unresolved };

const char* to_string(GenericType t);

struct TypeTestResult {
  GenericType type = GenericType::Unresolved;
  double det = 0.0;
  double det_derivative = 0.0;
  double tol = 0.0;
  cplx at;  // curve point used
};

/// Type C / type S test at the curve point nearest p. `tol` defaults to 10 h^2 in the sampled units.
TypeTestResult type_test(const NullField& nf, cplx p, double tol = -1.0, double grid_step = 0.0);

struct GenericReport {
  std::vector<Polyline> curves;
  std::vector<NullField> fields;
};

/// Singular curves of lambda and their null fields.
GenericReport analyse(const SampledMap& m);

/// Example fronts f_C (cuspidal edge) and f_S (swallowtail) with their normals.
std::pair<Vec3, Vec3> cuspidal_edge_germ(double z, double w);
std::pair<Vec3, Vec3> swallowtail_germ(double z, double w);

}  // namespace flatfront
