#include "flatfront/lift.hpp"

#include <algorithm>
#include <cmath>

namespace flatfront {

LiftIntegrator::LiftIntegrator(FrontData f, double tol) : data_(std::move(f)), tol_(tol) {}

LiftState LiftIntegrator::initial() const {
  double t = parallel_t(data_);
  return {Mat2::diag(std::exp(0.5 * t), std::exp(-0.5 * t)), 0.0};
}

std::pair<cplx, cplx> LiftIntegrator::forms(cplx z, cplx L) const {
  double t = parallel_t(data_);
  if (const auto* g = std::get_if<GaussData>(&data_)) {
    // Delta = e^{-t/2} e^L
    cplx delta2 = std::exp(2.0 * L - t);
    cplx diff = g->G(z) - g->Gstar(z);
    return {-g->G.d(1, z) / delta2, delta2 * g->Gstar.d(1, z) / (diff * diff)};
  }
  const auto& fm = std::get<FormsData>(data_);
  return {std::exp(t) * fm.omega(z), std::exp(-t) * fm.theta(z)};
}

LiftIntegrator::Deriv LiftIntegrator::rhs(const LiftState& s, cplx z, cplx dz) const {
  auto [om, th] = forms(z, s.L);
  Mat2 a{0.0, th * dz, om * dz, 0.0};
  Deriv d{s.E * a, 0.0};
  if (const auto* g = std::get_if<GaussData>(&data_)) d.dL = g->G.d(1, z) / (g->G(z) - g->Gstar(z)) * dz;
  return d;
}

LiftState LiftIntegrator::advance(const LiftState& s0, cplx a, cplx b) const {
  const cplx seg = b - a;
  const double length = std::abs(seg);
  if (length == 0.0) return s0;

  // one RK4 step over parameter interval [u, u+h] of the unit-speed segment
  auto step = [&](const LiftState& s, double u, double h) {
    auto at = [&](double v) { return a + v * seg; };
    Deriv k1 = rhs(s, at(u), seg);
    LiftState y2{s.E + (0.5 * h) * k1.dE, s.L + 0.5 * h * k1.dL};
    Deriv k2 = rhs(y2, at(u + 0.5 * h), seg);
    LiftState y3{s.E + (0.5 * h) * k2.dE, s.L + 0.5 * h * k2.dL};
    Deriv k3 = rhs(y3, at(u + 0.5 * h), seg);
    LiftState y4{s.E + h * k3.dE, s.L + h * k3.dL};
    Deriv k4 = rhs(y4, at(u + h), seg);
    return LiftState{s.E + (h / 6.0) * (k1.dE + 2.0 * k2.dE + 2.0 * k3.dE + k4.dE),
                     s.L + h / 6.0 * (k1.dL + 2.0 * k2.dL + 2.0 * k3.dL + k4.dL)};
  };

  LiftState s = s0;
  double u = 0.0;
  double h = std::min(1.0, 0.05 / length);
  int guard = 0;
  while (u < 1.0) {
    if (++guard > 200000) throw NonConvergence("lift integration did not converge");
    h = std::min(h, 1.0 - u);
    LiftState full = step(s, u, h);
    LiftState half = step(step(s, u, 0.5 * h), u + 0.5 * h, 0.5 * h);
    double scale = 1.0 + half.E.norm();
    double err = std::max((half.E - full.E).norm() / scale, std::abs(half.L - full.L) / (1.0 + std::abs(half.L))) / 15.0;
    double target = tol_ * h * length;
    if (!std::isfinite(err)) throw NonConvergence("lift integration produced non-finite values");
    if (err <= target || h * length < 1e-14) {
      // Richardson extrapolation of the two estimates
      s.E = half.E + (1.0 / 15.0) * (half.E - full.E);
      s.L = half.L + (half.L - full.L) / 15.0;
      s.E = renormalize(s.E);
      u += h;
      double grow = err > 0.0 ? 0.9 * std::pow(target / err, 0.25) : 4.0;
      h *= std::clamp(grow, 0.2, 4.0);
    } else {
      h *= std::clamp(0.9 * std::pow(target / err, 0.25), 0.1, 0.9);
    }
  }
  return s;
}

SL2 integrate_lift(const FrontData& f, const std::vector<cplx>& path, const Domain* d) {
  LiftIntegrator integ(f);
  LiftState s = integ.initial();
  if (path.empty()) return s.E;
  if (std::abs(path.front() - base_point(f)) > 1e-12 * (1.0 + std::abs(base_point(f))))
    throw std::invalid_argument("lift path must start at the base point");
  if (d)
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (!d->segment_clear(path[k], path[k + 1])) throw DomainError("lift path enters an excluded disk");
  for (std::size_t k = 0; k + 1 < path.size(); ++k) s = integ.advance(s, path[k], path[k + 1]);
  return s.E;
}

LegendrianLift::LegendrianLift(FrontData f, Domain d)
    : data_(std::move(f)), domain_(std::move(d)), integ_(data_) {
  const cplx z0 = base_point(data_);
  if (domain_.is_excluded(z0)) throw DomainError("base point lies in an excluded disk");
  SpanningTree tree = comb_tree(domain_, z0);
  fill_tree<LiftState>(domain_, tree, z0, integ_.initial(),
                       [this](const LiftState& s, cplx a, cplx b) { return integ_.advance(s, a, b); }, states_,
                       reached_);
}

LiftState LegendrianLift::evaluate(cplx z) const {
  if (domain_.is_excluded(z)) throw DomainError("point lies in an excluded disk");
  const int n = domain_.n();
  const Window& w = domain_.window();
  int ci = std::clamp(static_cast<int>(std::lround((z.real() - w.x0) / domain_.hx())), 0, n);
  int cj = std::clamp(static_cast<int>(std::lround((z.imag() - w.y0) / domain_.hy())), 0, n);
  std::size_t best = Domain::npos;
  double best_d = 0.0;
  for (int r = 0; r <= 3 && best == Domain::npos; ++r)
    for (int jj = std::max(0, cj - r); jj <= std::min(n, cj + r); ++jj)
      for (int ii = std::max(0, ci - r); ii <= std::min(n, ci + r); ++ii) {
        if (std::max(std::abs(ii - ci), std::abs(jj - cj)) != r) continue;
        std::size_t idx = domain_.index(ii, jj);
        if (!reached_[idx]) continue;
        cplx p = domain_.node(idx);
        if (!domain_.segment_clear(p, z)) continue;
        double dd = std::abs(p - z);
        if (best == Domain::npos || dd < best_d) {
          best = idx;
          best_d = dd;
        }
      }
  if (best != Domain::npos) return integ_.advance(states_[best], domain_.node(best), z);
  cplx z0 = base_point(data_);
  if (domain_.segment_clear(z0, z)) return integ_.advance(integ_.initial(), z0, z);
  throw DomainError("no clear path to this point");
}

FrontSample sample_surface(const FrontData& f, const Domain& d) {
  if (const auto* g = std::get_if<GaussData>(&f))
    for (const PeriodCheck& pc : certify_periods(*g, d))
      if (!pc.ok) throw PeriodViolation("period condition fails; refusing to sample", pc.loop, pc.period);
  LegendrianLift lift(f, d);
  FrontSample s;
  s.domain = d;
  s.f.resize(d.node_count());
  s.nu.resize(d.node_count());
  s.valid.assign(d.node_count(), 0);
  for (std::size_t i = 0; i < d.node_count(); ++i) {
    if (!lift.reached(i)) continue;
    const SL2& e = lift.node_state(i).E;
    s.f[i] = herm_from_lift(e).matrix();
    s.nu[i] = unit_normal(e);
    s.valid[i] = 1;
  }
  return s;
}

}  // namespace flatfront
