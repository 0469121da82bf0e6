#pragma once

// Flat fronts in H^3 from Gauss maps (G, G*) or canonical forms (omega, theta):
// the pointwise evaluators, |rho| by path integration, special points, ends
// and period checks.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "flatfront/domain.hpp"
#include "flatfront/expr.hpp"

namespace flatfront {

/// Gauss-map data. The lift is normalised so that E(z0) = diag(e^{t/2}, e^{-t/2}).
struct GaussData {
  MeroFn G;
  MeroFn Gstar;
  cplx z0{0.0};
  double t = 0.0;
};

/// Canonical forms omega = omega_hat dz, theta = theta_hat dz of the t = 0 member.
struct FormsData {
  MeroFn omega;
  MeroFn theta;
  cplx z0{0.0};
  double t = 0.0;
};

using FrontData = std::variant<GaussData, FormsData>;

cplx base_point(const FrontData& f);
double parallel_t(const FrontData& f);
FrontData with_t(FrontData f, double t);
bool is_gauss(const FrontData& f);

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method failed to reach its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed loop whose period of dG/(G-G*) has a non-zero real part.
class PeriodViolation : public std::runtime_error {
 public:
  PeriodViolation(const std::string& msg, std::vector<cplx> loop, cplx period)
      : std::runtime_error(msg), loop_(std::move(loop)), period_(period) {}
  const std::vector<cplx>& loop() const { return loop_; }
  cplx period() const { return period_; }

 private:
  std::vector<cplx> loop_;
  cplx period_;
};

/// Local quantities that do not depend on t.
struct CanonicalJet {
  cplx omega_ld;  // omega_hat' / omega_hat
  cplx theta_ld;  // theta_hat' / theta_hat
  cplx hopf;      // Q_hat = omega_hat * theta_hat
  cplx s_omega;   // Schwarzian s(omega_hat)
  cplx s_theta;
  cplx schwarz_diff;  // s(theta_hat) - s(omega_hat), computed without the 2Q terms

  cplx dlog_rho() const { return theta_ld - omega_ld; }
};

/// Sign of sqrt(w) nearest to `previous`.
cplx continue_sqrt(cplx w, cplx previous);

/// Schwarzian derivative from a 4-jet (f, f', f'', f''').
cplx schwarzian(const std::array<cplx, 4>& jet);

struct SpecialPoints {
  std::vector<cplx> ends;
  std::vector<cplx> poles;
  std::vector<cplx> umbilics;
  std::vector<cplx> branch_points;
  std::vector<cplx> unresolved;
};

/// Ends, poles, umbilics and branch points inside the window (slightly enlarged).
SpecialPoints locate_special_points(const FrontData& f, const Window& w);

/// Domain over w with disks of `radius` around every special point.
Domain make_domain(const FrontData& f, const Window& w, int grid, double radius = 1e-2);

/// Evaluators for one member f_t of a parallel family on a fixed domain.
/// In Gauss mode the real part of the integral of dG/(G-G*) is cached on the
/// grid along a spanning tree of straight edges.
class CanonicalEvaluators {
 public:
  CanonicalEvaluators(FrontData f, Domain d);

  const FrontData& data() const { return data_; }
  const Domain& domain() const { return domain_; }
  double t() const { return parallel_t(data_); }

  CanonicalJet jet(cplx z) const;
  /// log|rho_t| at z, with rho_t = theta_hat_t / omega_hat_t.
  double log_abs_rho(cplx z) const { return base_log_abs_rho(z) - 2.0 * t(); }
  /// log|rho_0|; the singular set of f_t is {base_log_abs_rho = 2t}.
  double base_log_abs_rho(cplx z) const;
  /// Grid value of base_log_abs_rho (NaN at unusable nodes).
  double node_base_log_abs_rho(std::size_t idx) const;
  /// Real part of the integral of G'/(G-G*) from z0 (Gauss mode only).
  double re_log_delta(cplx z) const;

  /// G, G', G*, G*' at z (Gauss mode only).
  std::array<cplx, 4> gauss_values(cplx z) const;

 private:
  void require_admissible(cplx z) const;
  double path_real_integral(cplx a, cplx b) const;

  FrontData data_;
  Domain domain_;
  std::vector<double> re_l_;  // NaN where the tree did not reach
};

/// Integral of dG/(G-G*) around a closed polyline.
cplx period_integral(const GaussData& g, const std::vector<cplx>& loop);

struct PeriodCheck {
  Disk disk;
  std::vector<cplx> loop;
  cplx period;
  bool ok = false;
};

/// Periods around every excluded disk of the domain that meets its window.
std::vector<PeriodCheck> certify_periods(const GaussData& g, const Domain& d, double tol = 1e-8);

enum class EndStatus { Ok, NonRational, EssentialDelta };

struct EndReport {
  EndStatus status = EndStatus::Ok;
  bool regular = false;
  bool cylindrical = false;
  int order_hopf = 0;
  double order_omega = 0.0;
  double order_theta = 0.0;
  std::string message;
};

/// Classify the end at p (nullopt = the point at infinity).
EndReport classify_end(const FrontData& f, std::optional<cplx> p);

}  // namespace flatfront
