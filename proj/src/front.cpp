#include "flatfront/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flatfront/poly.hpp"

namespace flatfront {

using expr::MeroExpr;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
cplx segment_integral(F integrand, cplx a, cplx b) {
  if (a == b) return 0.0;
  cplx len = b - a;
  auto f = [&](double s) -> cplx { return integrand(a + s * len) * len; };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 12, 1e-13);
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Window enlarged(const Window& w, double frac) {
  double mx = frac * (w.x1 - w.x0), my = frac * (w.y1 - w.y0);
  return {w.x0 - mx, w.x1 + mx, w.y0 - my, w.y1 + my};
}

// Zeros (positive order) of a rational expression.
std::vector<cplx> rational_zeros(const MeroExpr& e, const Window& w) {
  std::vector<cplx> out;
  auto rf = expr::to_rational(e);
  for (cplx r : dedupe_points(polynomial_roots(rf.num), 1e-8)) {
    if (!w.contains(r)) continue;
    try {
      if (expr::order_at(e, r) > 0) out.push_back(r);
    } catch (const expr::UndefinedOrder&) {
    }
  }
  return out;
}

std::vector<cplx> rational_poles(const MeroExpr& e, const Window& w) {
  std::vector<cplx> out;
  auto rf = expr::to_rational(e);
  for (cplx r : dedupe_points(polynomial_roots(rf.den), 1e-8)) {
    if (!w.contains(r)) continue;
    try {
      if (expr::order_at(e, r) < 0) out.push_back(r);
    } catch (const expr::UndefinedOrder&) {
    }
  }
  return out;
}

// Grid scan for zeros of a non-rational function, polished by Newton.
void scan_zeros(const MeroFn& f, const Window& w, std::vector<cplx>& found, std::vector<cplx>& unresolved) {
  const int n = 96;
  std::vector<double> mag(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int j) {
    return cplx(w.x0 + (w.x1 - w.x0) * i / n, w.y0 + (w.y1 - w.y0) * j / n);
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      cplx v = f(at(i, j));
      mag[static_cast<std::size_t>(j * (n + 1) + i)] = finite(v) ? std::abs(v) : kNaN;
    }
  double median = 0.0;
  {
    std::vector<double> m;
    for (double x : mag)
      if (std::isfinite(x)) m.push_back(x);
    if (m.empty()) return;
    std::nth_element(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(m.size() / 2), m.end());
    median = m[m.size() / 2];
  }
  if (median == 0.0) return;  // identically zero
  for (int j = 1; j < n; ++j) {
    for (int i = 1; i < n; ++i) {
      double c = mag[static_cast<std::size_t>(j * (n + 1) + i)];
      if (!std::isfinite(c)) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj) continue;
          double o = mag[static_cast<std::size_t>((j + dj) * (n + 1) + i + di)];
          if (std::isfinite(o) && o < c) {
            minimum = false;
            break;
          }
        }
      if (!minimum) continue;
      cplx z = at(i, j);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        cplx v = f(z), dv = f.d(1, z);
        if (!finite(v) || !finite(dv) || dv == 0.0) break;
        cplx step = v / dv;
        z -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) {
          converged = std::abs(f(z)) < 1e-9 * (1.0 + median);
          break;
        }
      }
      if (converged) {
        if (w.contains(z)) found.push_back(z);
      } else if (c < 1e-3 * median) {
        unresolved.push_back(at(i, j));
      }
    }
  }
  found = dedupe_points(found, 1e-8);
}

}  // namespace

cplx base_point(const FrontData& f) {
  return std::visit([](const auto& x) { return x.z0; }, f);
}

double parallel_t(const FrontData& f) {
  return std::visit([](const auto& x) { return x.t; }, f);
}

FrontData with_t(FrontData f, double t) {
  std::visit([t](auto& x) { x.t = t; }, f);
  return f;
}

bool is_gauss(const FrontData& f) { return std::holds_alternative<GaussData>(f); }

cplx continue_sqrt(cplx w, cplx previous) {
  cplx s = std::sqrt(w);
  return std::abs(s - previous) <= std::abs(s + previous) ? s : -s;
}

cplx schwarzian(const std::array<cplx, 4>& j) {
  cplx r = j[2] / j[1];
  return j[3] / j[1] - 1.5 * r * r;
}

// ------------------------------------------------------------ special points

SpecialPoints locate_special_points(const FrontData& f, const Window& window) {
  SpecialPoints sp;
  Window w = enlarged(window, 0.05);
  if (const auto* g = std::get_if<GaussData>(&f)) {
    MeroExpr G = g->G.expr(), H = g->Gstar.expr();
    MeroExpr diff = G - H;
    MeroExpr dG = g->G.derivative(1), dH = g->Gstar.derivative(1);
    MeroExpr hopf = -(dG * dH) / pow(diff, 2);
    if (expr::is_rational(G) && expr::is_rational(H)) {
      sp.ends = rational_zeros(diff, w);
      auto pg = rational_poles(G, w), ph = rational_poles(H, w);
      for (cplx p : pg) {
        bool common = std::any_of(ph.begin(), ph.end(), [&](cplx q) { return std::abs(p - q) < 1e-8; });
        (common ? sp.ends : sp.poles).push_back(p);
      }
      for (cplx p : ph)
        if (std::none_of(pg.begin(), pg.end(), [&](cplx q) { return std::abs(p - q) < 1e-8; }))
          sp.poles.push_back(p);
      sp.umbilics = rational_zeros(hopf, w);
      auto bg = rational_zeros(dG, w), bh = rational_zeros(dH, w);
      sp.branch_points = bg;
      sp.branch_points.insert(sp.branch_points.end(), bh.begin(), bh.end());
    } else {
      scan_zeros(MeroFn(diff), w, sp.ends, sp.unresolved);
      scan_zeros(MeroFn(hopf), w, sp.umbilics, sp.unresolved);
    }
  } else {
    const auto& fm = std::get<FormsData>(f);
    MeroExpr om = fm.omega.expr(), th = fm.theta.expr();
    if (expr::is_rational(om) && expr::is_rational(th)) {
      sp.ends = rational_poles(om, w);
      auto pt = rational_poles(th, w);
      sp.ends.insert(sp.ends.end(), pt.begin(), pt.end());
      sp.umbilics = rational_zeros(om, w);
      auto zt = rational_zeros(th, w);
      sp.umbilics.insert(sp.umbilics.end(), zt.begin(), zt.end());
    } else {
      scan_zeros(fm.omega, w, sp.umbilics, sp.unresolved);
      scan_zeros(fm.theta, w, sp.umbilics, sp.unresolved);
    }
  }
  sp.ends = dedupe_points(sp.ends, 1e-8);
  sp.poles = dedupe_points(sp.poles, 1e-8);
  sp.umbilics = dedupe_points(sp.umbilics, 1e-8);
  sp.branch_points = dedupe_points(sp.branch_points, 1e-8);
  sp.unresolved = dedupe_points(sp.unresolved, 1e-6);
  return sp;
}

Domain make_domain(const FrontData& f, const Window& w, int grid, double radius) {
  SpecialPoints sp = locate_special_points(f, w);
  std::vector<Disk> disks;
  auto add = [&](const std::vector<cplx>& pts, const char* reason, double r) {
    for (cplx p : pts) {
      auto it = std::find_if(disks.begin(), disks.end(), [&](const Disk& d) { return std::abs(d.center - p) < 1e-8; });
      if (it != disks.end()) {
        it->reason += std::string("+") + reason;
        it->radius = std::max(it->radius, r);
      } else {
        disks.push_back({p, r, reason});
      }
    }
  };
  add(sp.ends, "end", radius);
  add(sp.poles, "pole", radius);
  add(sp.umbilics, "umbilic", radius);
  add(sp.branch_points, "branch", radius);
  add(sp.unresolved, "unresolved", 10.0 * radius);
  Domain d(w, grid, std::move(disks));
  if (d.is_excluded(base_point(f))) throw DomainError("base point lies in an excluded disk");
  return d;
}

// ---------------------------------------------------------------- evaluators

CanonicalEvaluators::CanonicalEvaluators(FrontData f, Domain d) : data_(std::move(f)), domain_(std::move(d)) {
  const cplx z0 = base_point(data_);
  if (domain_.is_excluded(z0)) throw DomainError("base point lies in an excluded disk");
  const auto* g = std::get_if<GaussData>(&data_);
  if (!g) return;
  cplx diff0 = g->G(z0) - g->Gstar(z0);
  if (!finite(diff0) || std::abs(diff0) == 0.0) throw DomainError("base point is an end or a pole");
  for (const PeriodCheck& pc : certify_periods(*g, domain_))
    if (!pc.ok)
      throw PeriodViolation("period of dG/(G-G*) has non-zero real part around z = (" +
                                std::to_string(pc.disk.center.real()) + "," +
                                std::to_string(pc.disk.center.imag()) + ")",
                            pc.loop, pc.period);
  SpanningTree tree = comb_tree(domain_, z0);
  std::vector<unsigned char> reached;
  fill_tree<double>(domain_, tree, z0, 0.0,
                    [this](double va, cplx a, cplx b) { return va + path_real_integral(a, b); }, re_l_, reached);
  for (std::size_t i = 0; i < re_l_.size(); ++i)
    if (!reached[i]) re_l_[i] = kNaN;
}

void CanonicalEvaluators::require_admissible(cplx z) const {
  if (domain_.is_excluded(z)) throw DomainError("point lies in an excluded disk");
}

double CanonicalEvaluators::path_real_integral(cplx a, cplx b) const {
  const auto& g = std::get<GaussData>(data_);
  return segment_integral([&](cplx z) { return g.G.d(1, z) / (g.G(z) - g.Gstar(z)); }, a, b).real();
}

CanonicalJet CanonicalEvaluators::jet(cplx z) const {
  require_admissible(z);
  CanonicalJet j;
  if (const auto* g = std::get_if<GaussData>(&data_)) {
    auto G = g->G.jet(z);
    auto H = g->Gstar.jet(z);
    cplx diff = G[0] - H[0];
    j.omega_ld = G[2] / G[1] - 2.0 * G[1] / diff;
    j.theta_ld = H[2] / H[1] + 2.0 * H[1] / diff;
    j.hopf = -G[1] * H[1] / (diff * diff);
    cplx sg = schwarzian(G), sh = schwarzian(H);
    j.s_omega = 2.0 * j.hopf + sg;
    j.s_theta = 2.0 * j.hopf + sh;
    j.schwarz_diff = sh - sg;
  } else {
    const auto& fm = std::get<FormsData>(data_);
    cplx w0 = fm.omega(z), w1 = fm.omega.d(1, z), w2 = fm.omega.d(2, z);
    cplx u0 = fm.theta(z), u1 = fm.theta.d(1, z), u2 = fm.theta.d(2, z);
    j.omega_ld = w1 / w0;
    j.theta_ld = u1 / u0;
    j.hopf = w0 * u0;
    j.s_omega = w2 / w0 - 1.5 * j.omega_ld * j.omega_ld;
    j.s_theta = u2 / u0 - 1.5 * j.theta_ld * j.theta_ld;
    j.schwarz_diff = j.s_theta - j.s_omega;
  }
  if (!finite(j.omega_ld) || !finite(j.theta_ld) || !finite(j.hopf) || !finite(j.schwarz_diff))
    throw DomainError("evaluator is not finite at this point");
  return j;
}

double CanonicalEvaluators::re_log_delta(cplx z) const {
  const auto* g = std::get_if<GaussData>(&data_);
  if (!g) throw std::logic_error("re_log_delta needs Gauss data");
  require_admissible(z);
  const int n = domain_.n();
  const Window& w = domain_.window();
  int ci = static_cast<int>(std::lround((z.real() - w.x0) / domain_.hx()));
  int cj = static_cast<int>(std::lround((z.imag() - w.y0) / domain_.hy()));
  ci = std::clamp(ci, 0, n);
  cj = std::clamp(cj, 0, n);
  std::size_t best = Domain::npos;
  double best_d = 0.0;
  for (int r = 0; r <= 3 && best == Domain::npos; ++r) {
    for (int jj = std::max(0, cj - r); jj <= std::min(n, cj + r); ++jj)
      for (int ii = std::max(0, ci - r); ii <= std::min(n, ci + r); ++ii) {
        if (std::max(std::abs(ii - ci), std::abs(jj - cj)) != r) continue;
        std::size_t idx = domain_.index(ii, jj);
        if (!std::isfinite(re_l_[idx])) continue;
        cplx p = domain_.node(idx);
        if (!domain_.segment_clear(p, z)) continue;
        double dd = std::abs(p - z);
        if (best == Domain::npos || dd < best_d) {
          best = idx;
          best_d = dd;
        }
      }
  }
  if (best != Domain::npos) return re_l_[best] + path_real_integral(domain_.node(best), z);
  cplx z0 = base_point(data_);
  if (domain_.segment_clear(z0, z)) return path_real_integral(z0, z);
  throw DomainError("no clear path to this point");
}

double CanonicalEvaluators::base_log_abs_rho(cplx z) const {
  if (const auto* g = std::get_if<GaussData>(&data_)) {
    double rl = re_log_delta(z);
    cplx diff = g->G(z) - g->Gstar(z);
    double v = 4.0 * rl + std::log(std::abs(g->Gstar.d(1, z))) - std::log(std::abs(g->G.d(1, z))) -
               2.0 * std::log(std::abs(diff));
    if (!std::isfinite(v)) throw DomainError("log|rho| is not finite at this point");
    return v;
  }
  require_admissible(z);
  const auto& fm = std::get<FormsData>(data_);
  double v = std::log(std::abs(fm.theta(z))) - std::log(std::abs(fm.omega(z)));
  if (!std::isfinite(v)) throw DomainError("log|rho| is not finite at this point");
  return v;
}

double CanonicalEvaluators::node_base_log_abs_rho(std::size_t idx) const {
  cplx z = domain_.node(idx);
  if (domain_.is_excluded(z)) return kNaN;
  if (const auto* g = std::get_if<GaussData>(&data_)) {
    double rl = re_l_[idx];
    if (!std::isfinite(rl)) return kNaN;
    cplx diff = g->G(z) - g->Gstar(z);
    double v = 4.0 * rl + std::log(std::abs(g->Gstar.d(1, z))) - std::log(std::abs(g->G.d(1, z))) -
               2.0 * std::log(std::abs(diff));
    return std::isfinite(v) ? v : kNaN;
  }
  const auto& fm = std::get<FormsData>(data_);
  double v = std::log(std::abs(fm.theta(z))) - std::log(std::abs(fm.omega(z)));
  return std::isfinite(v) ? v : kNaN;
}

std::array<cplx, 4> CanonicalEvaluators::gauss_values(cplx z) const {
  const auto& g = std::get<GaussData>(data_);
  return {g.G(z), g.G.d(1, z), g.Gstar(z), g.Gstar.d(1, z)};
}

// ------------------------------------------------------------------- periods

cplx period_integral(const GaussData& g, const std::vector<cplx>& loop) {
  if (loop.size() < 3 || std::abs(loop.front() - loop.back()) > 1e-12 * (1.0 + std::abs(loop.front())))
    throw std::invalid_argument("period_integral needs a closed polyline");
  cplx sum = 0.0;
  auto f = [&](cplx z) { return g.G.d(1, z) / (g.G(z) - g.Gstar(z)); };
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) sum += segment_integral(f, loop[k], loop[k + 1]);
  return sum;
}

std::vector<PeriodCheck> certify_periods(const GaussData& g, const Domain& d, double tol) {
  std::vector<PeriodCheck> out;
  const Window w = d.window();
  const int m = 96;
  for (const Disk& disk : d.excluded()) {
    Window near = {w.x0 - disk.radius, w.x1 + disk.radius, w.y0 - disk.radius, w.y1 + disk.radius};
    if (!near.contains(disk.center)) continue;
    PeriodCheck pc;
    pc.disk = disk;
    for (double factor : {1.5, 1.25, 1.1, 2.0, 3.0}) {
      double r = factor * disk.radius;
      std::vector<cplx> loop;
      for (int k = 0; k <= m; ++k) loop.push_back(disk.center + std::polar(r, 2.0 * M_PI * (k % m) / m));
      bool clear = true;
      for (int k = 0; k < m && clear; ++k) clear = d.segment_clear(loop[static_cast<std::size_t>(k)], loop[static_cast<std::size_t>(k + 1)]);
      if (clear) {
        pc.loop = std::move(loop);
        break;
      }
    }
    if (pc.loop.empty()) {
      pc.ok = false;
      pc.period = cplx(kNaN, kNaN);
      out.push_back(pc);
      continue;
    }
    pc.period = period_integral(g, pc.loop);
    pc.ok = std::abs(pc.period.real()) < tol;
    out.push_back(std::move(pc));
  }
  return out;
}

// ---------------------------------------------------------------------- ends

EndReport classify_end(const FrontData& f, std::optional<cplx> p) {
  EndReport rep;
  const MeroExpr inv = MeroExpr::constant(1.0) / MeroExpr::var();
  auto local = [&](const MeroExpr& e) { return p ? e : expr::substitute(e, inv); };
  const cplx at = p ? *p : cplx(0.0);

  if (const auto* g = std::get_if<GaussData>(&f)) {
    MeroExpr G = local(g->G.expr()), H = local(g->Gstar.expr());
    if (!expr::is_rational(G) || !expr::is_rational(H)) {
      rep.status = EndStatus::NonRational;
      rep.message = "non-rational Gauss maps: end type not determined";
      return rep;
    }
    MeroExpr dG = expr::differentiate(G), dH = expr::differentiate(H), diff = G - H;
    MeroExpr hopf = -(dG * dH) / pow(diff, 2);
    rep.order_hopf = expr::order_at(hopf, at);
    rep.regular = rep.order_hopf >= -2;
    MeroExpr integrand = dG / diff;
    int k = expr::order_at(integrand, at);
    if (k < -1) {
      rep.status = EndStatus::EssentialDelta;
      rep.message = "dG/(G-G*) has a pole of order > 1: Delta has an essential singularity";
      return rep;
    }
    double ord_delta = 0.0;
    if (k == -1) {
      // residue by the trapezoid rule on a small circle (spectrally accurate)
      auto rf = expr::to_rational(integrand);
      double rad = 1e-2;
      for (const auto& poly : {rf.num, rf.den})
        for (cplx r : polynomial_roots(poly))
          if (std::abs(r - at) > 1e-7) rad = std::min(rad, 0.5 * std::abs(r - at));
      MeroFn fn(integrand);
      const int m = 256;
      cplx sum = 0.0;
      for (int j = 0; j < m; ++j) {
        cplx u = std::polar(rad, 2.0 * M_PI * j / m);
        sum += fn(at + u) * u;
      }
      ord_delta = (sum / static_cast<double>(m)).real();
    }
    rep.order_omega = -2.0 * ord_delta + expr::order_at(dG, at);
    rep.order_theta = 2.0 * ord_delta + expr::order_at(dH, at) - 2.0 * expr::order_at(diff, at);
  } else {
    const auto& fm = std::get<FormsData>(f);
    MeroExpr om = local(fm.omega.expr()), th = local(fm.theta.expr());
    if (!expr::is_rational(om) || !expr::is_rational(th)) {
      rep.status = EndStatus::NonRational;
      rep.message = "non-rational canonical forms: end type not determined";
      return rep;
    }
    if (!p) {
      // omega_hat(z) dz = -omega_hat(1/w) w^-2 dw
      MeroExpr w2 = pow(MeroExpr::var(), -2);
      om = -(om * w2);
      th = -(th * w2);
    }
    rep.order_omega = expr::order_at(om, at);
    rep.order_theta = expr::order_at(th, at);
    rep.order_hopf = static_cast<int>(rep.order_omega + rep.order_theta);
    rep.regular = rep.order_hopf >= -2;
  }
  rep.cylindrical = std::abs(rep.order_omega - rep.order_theta) < 1e-9;
  return rep;
}

}  // namespace flatfront
