#pragma once

// Holomorphic Legendrian lift E with E^{-1} dE = [[0, theta_hat],[omega_hat, 0]] dz,
// integrated by adaptive RK4 along straight segments, plus surface sampling.

#include <vector>

#include "flatfront/front.hpp"
#include "flatfront/hyperbolic.hpp"

namespace flatfront {

/// Integration state: the lift and, for Gauss data, L = integral of G'/(G-G*) from z0.
struct LiftState {
  SL2 E;
  cplx L{0.0};
};

class LiftIntegrator {
 public:
  /// `tol` is the local error target per unit arclength.
  explicit LiftIntegrator(FrontData f, double tol = 1e-10);

  /// State at z0: E = diag(e^{t/2}, e^{-t/2}), L = 0.
  LiftState initial() const;
  /// Integrate from a to b along the straight segment.
  LiftState advance(const LiftState& s, cplx a, cplx b) const;
  /// (omega_hat_t, theta_hat_t) at z given the accumulated L.
  std::pair<cplx, cplx> forms(cplx z, cplx L) const;
  const FrontData& data() const { return data_; }

 private:
  struct Deriv {
    Mat2 dE;
    cplx dL;
  };
  Deriv rhs(const LiftState& s, cplx z, cplx dz) const;

  FrontData data_;
  double tol_;
};

/// Lift at the end of a polyline starting at z0. Throws DomainError if any
/// segment meets an excluded disk of `d` (when given).
SL2 integrate_lift(const FrontData& f, const std::vector<cplx>& path, const Domain* d = nullptr);

/// Lift values at every reachable node of a domain grid.
class LegendrianLift {
 public:
  LegendrianLift(FrontData f, Domain d);

  const Domain& domain() const { return domain_; }
  bool reached(std::size_t idx) const { return reached_[idx] != 0; }
  const LiftState& node_state(std::size_t idx) const { return states_[idx]; }
  /// Lift at an arbitrary admissible point (nearest reached node plus one segment).
  LiftState evaluate(cplx z) const;
  const LiftIntegrator& integrator() const { return integ_; }

 private:
  FrontData data_;
  Domain domain_;
  LiftIntegrator integ_;
  std::vector<LiftState> states_;
  std::vector<unsigned char> reached_;
};

struct FrontSample {
  Domain domain;
  std::vector<Mat2> f;   // E E*
  std::vector<Mat2> nu;  // E diag(1,-1) E*
  std::vector<unsigned char> valid;
};

/// Samples (f, nu) on the domain grid. Gauss data must pass the period check.
FrontSample sample_surface(const FrontData& f, const Domain& d);

}  // namespace flatfront
