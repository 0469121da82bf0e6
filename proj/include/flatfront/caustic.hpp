#pragma once

// Caustics of flat fronts: the common focal surface of a parallel family,
// its lift, canonical forms and Gauss maps, and where it is singular.

#include <utility>
#include <vector>

#include "flatfront/contour.hpp"
#include "flatfront/front.hpp"
#include "flatfront/hyperbolic.hpp"

namespace flatfront {

struct PrincipalCurvatures {
  double kappa1 = 0.0;  // infinite on the singular set
  double kappa2 = 0.0;
  double r1 = 0.0;      // (1/2) log|rho_t|
  bool singular = false;
};

PrincipalCurvatures principal_curvatures(const CanonicalEvaluators& ev, cplx z);

/// alpha^{-1/4} for alpha = dG/dG*, continued from point to point; sqrt(alpha)
/// is its inverse square. The seed picks one of the four initial roots.
class AlphaBranch {
 public:
  explicit AlphaBranch(int seed = 0) : seed_(seed) {}
  void update(cplx alpha);
  cplx quarter_inv() const { return q_; }
  cplx sqrt_alpha() const { return 1.0 / (q_ * q_); }
  bool started() const { return started_; }

 private:
  int seed_;
  bool started_ = false;
  cplx q_{1.0};
};

/// Closed-form caustic lift in the gauge E = M(z) diag(1/Delta, Delta)
/// with M = [[G, G*/(G-G*)], [1, 1/(G-G*)]]. Continues `br` to z.
SL2 caustic_lift(const GaussData& g, cplx z, AlphaBranch& br);

/// Left factor taking the closed-form gauge to the integrated lift: M(z0)^{-1}.
Mat2 lift_gauge(const GaussData& g);

/// E_f diag(rho^{1/4}, rho^{-1/4}) P for an integrated lift; `quarter`
/// carries the continued rho_t^{1/4} (start it at 0 for the principal root).
SL2 caustic_lift_from_front(const SL2& e, cplx rho_t, cplx& quarter);

/// Caustic point cosh r1 f + sinh r1 nu = E diag(|rho|^{1/2}, |rho|^{-1/2}) E*.
HermPoint caustic_point(const SL2& e, double log_abs_rho_t);

/// Gauss maps (G_c, G_c*) of the caustic. Continues `br` to z.
std::pair<cplx, cplx> caustic_gauss(const GaussData& g, cplx z, AlphaBranch& br);

struct CausticForms {
  cplx omega_c;
  cplx theta_c;
  cplx d_omega_c;  // z-derivatives
  cplx d_theta_c;
};

/// omega_c = sqrt(Q) - i D/4, theta_c = sqrt(Q) + i D/4 for a chosen sqrt(Q).
CausticForms caustic_forms(const CanonicalJet& j, cplx sqrt_q);

/// Q_c = omega_c theta_c = Q + D^2/16 (independent of the root).
cplx caustic_hopf(const CanonicalJet& j);

enum class CausticVerdict { Regular, CuspidalEdge, NonCuspidal, Degenerate };

const char* to_string(CausticVerdict v);

struct CausticRecord {
  cplx z;
  CausticVerdict from_invariants = CausticVerdict::Regular;  // via zeta_c, zeta_s
  CausticVerdict from_forms = CausticVerdict::Regular;       // via omega_c, theta_c
  double re_zeta_c = 0.0;
  double re_zeta_s = 0.0;
  double schwarz_diff_abs = 0.0;  // |S(G) - S(G*)| = |zeta_s Q|
};

struct CausticLocus {
  std::vector<Polyline> zc_curves;        // {zeta_c in [0, inf)}
  std::vector<cplx> direct_points;        // edge roots of |theta_c|^2 - |omega_c|^2
  std::vector<CausticRecord> records;     // one per Zc vertex
  double hausdorff = 0.0;                 // between direct points and Zc vertices
};

CausticLocus caustic_singularities(const CanonicalEvaluators& ev, double base_tol = 1e-7);

double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace flatfront
