#pragma once

// Singularity criteria for flat fronts: pointwise verdicts, the invariants
// xi, zeta_c, zeta_s, singular-curve tracing, swallowtail enumeration and
// the sweep for exceptional parallel parameters.

#include <map>
#include <string>
#include <vector>

#include "flatfront/contour.hpp"
#include "flatfront/front.hpp"

namespace flatfront {

enum class Verdict { Regular, CuspidalEdge, Swallowtail, DegenerateSingular, ConeCandidate, Unresolved };

std::string to_string(Verdict v);

struct Invariants {
  cplx xi;      // (theta'/theta - omega'/omega) Q_hat
  cplx zeta_c;  // (theta'/theta - omega'/omega)^2 / Q_hat
  cplx zeta_s;  // (s(theta) - s(omega)) / Q_hat
};

Invariants invariants_at(const CanonicalEvaluators& ev, cplx z);

/// Absolute thresholds below which a diagnostic counts as zero.
struct Thresholds {
  double singular = 1e-7;
  double xi = 1e-7;
  double im_sqrt_zeta_c = 1e-7;
  double re_zeta_s = 1e-7;

  /// 1e-7 * (1 + scale) for each diagnostic; `base` replaces 1e-7.
  static Thresholds scaled(double xi_scale, double zc_scale, double zs_scale, double base = 1e-7);
};

struct Diagnostics {
  double lambda_proxy = 0.0;  // log|rho_0| - 2t
  double xi_abs = 0.0;
  double im_sqrt_zeta_c = 0.0;
  double re_zeta_s = 0.0;
};

struct ClassificationRecord {
  cplx z;
  Verdict verdict = Verdict::Unresolved;
  Diagnostics diag;
  Thresholds tol;
};

/// The verdict as a pure function of diagnostics and thresholds.
Verdict decide(const Diagnostics& d, const Thresholds& tol);

Diagnostics diagnostics_at(const CanonicalEvaluators& ev, cplx z, double t);
ClassificationRecord classify_point(const CanonicalEvaluators& ev, cplx z, double t, const Thresholds& tol = {});

struct SingularCurve {
  std::vector<cplx> points;
  bool closed = false;
  std::vector<ClassificationRecord> records;  // one per vertex
  Thresholds tol;                             // thresholds used for this curve
};

struct TraceOptions {
  double base_tol = 1e-7;  // zero threshold factor, scaled by per-curve medians
};

struct TraceResult {
  std::vector<SingularCurve> curves;
  int saddle_cells = 0;  // ambiguous cells; a large count suggests a finer grid
};

/// Level set {log|rho_0| = 2t} on the evaluator's domain grid.
TraceResult trace_singular_curves(const CanonicalEvaluators& ev, double t, const TraceOptions& opt = {});

/// Moves z onto {log|rho_0| = 2t} along the gradient.
cplx project_to_singular_set(const CanonicalEvaluators& ev, cplx z, double t, int max_iterations = 12);

class BranchJump : public NonConvergence {
 public:
  using NonConvergence::NonConvergence;
};

/// Zeros of Im sqrt(zeta_c) along the curve, refined by bisection.
std::vector<ClassificationRecord> enumerate_swallowtails(const CanonicalEvaluators& ev, const SingularCurve& curve,
                                                         double t);

struct ExceptionalValue {
  double e2t = 0.0;  // |rho_0(p)|
  double t = 0.0;
  std::string kind;  // "Z0" or "ZcZs"
  std::vector<cplx> witnesses;
  double xi_abs = 0.0;
  double im_sqrt_zeta_c = 0.0;
  double re_zeta_s = 0.0;
  bool whole_domain = false;  // the invariant vanishes identically
};

/// A set of exceptional parameters that is not finite on this domain.
struct ContinuumFamily {
  std::string kind;
  double e2t_min = 0.0;
  double e2t_max = 0.0;
  std::string note;
};

struct UnresolvedCandidate {
  cplx z;
  std::string kind;
  double residual = 0.0;
};

struct IntervalSummary {
  double t = 0.0;
  std::map<Verdict, int> counts;
  int swallowtails = 0;
  int curves = 0;
};

struct TSweepReport {
  std::vector<ExceptionalValue> values;
  std::vector<ContinuumFamily> continua;
  std::vector<UnresolvedCandidate> unresolved;
  std::vector<IntervalSummary> intervals;
};

struct SweepOptions {
  std::vector<double> probe_t;  // extra parameters to summarise
  bool probe_between = true;    // summarise one t inside each gap between exceptional values
};

TSweepReport sweep_t(const CanonicalEvaluators& ev, const SweepOptions& opt = {});

/// Summary of the singular set of f_t: verdict counts over traced vertices plus swallowtails.
IntervalSummary summarise(const CanonicalEvaluators& ev, double t);

/// Criteria for the family (omega, theta) = (dz, e^h dz) at t = 0.
ClassificationRecord classify_fh(const MeroFn& h, cplx z, const Thresholds& tol = {});

}  // namespace flatfront
