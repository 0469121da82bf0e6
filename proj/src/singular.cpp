#include "flatfront/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace flatfront {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median_of(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }), v.end());
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// angle between two nonzero complex numbers
double turn(cplx a, cplx b) {
  if (std::abs(a) == 0.0 || std::abs(b) == 0.0) return 0.0;
  return std::abs(std::arg(b / a));
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "Regular";
    case Verdict::CuspidalEdge: return "CuspidalEdge";
    case Verdict::Swallowtail: return "Swallowtail";
    case Verdict::DegenerateSingular: return "DegenerateSingular";
    case Verdict::ConeCandidate: return "ConeCandidate";
    case Verdict::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

Invariants invariants_at(const CanonicalEvaluators& ev, cplx z) {
  CanonicalJet j = ev.jet(z);
  cplx d = j.dlog_rho();
  return {d * j.hopf, d * d / j.hopf, j.schwarz_diff / j.hopf};
}

Thresholds Thresholds::scaled(double xi_scale, double zc_scale, double zs_scale, double base) {
  Thresholds t;
  t.xi = base * (1.0 + xi_scale);
  t.im_sqrt_zeta_c = base * (1.0 + zc_scale);
  t.re_zeta_s = base * (1.0 + zs_scale);
  return t;
}

Verdict decide(const Diagnostics& d, const Thresholds& tol) {
  if (!std::isfinite(d.lambda_proxy)) return Verdict::Unresolved;
  if (std::abs(d.lambda_proxy) > tol.singular) return Verdict::Regular;
  if (!std::isfinite(d.xi_abs) || !std::isfinite(d.im_sqrt_zeta_c) || !std::isfinite(d.re_zeta_s))
    return Verdict::Unresolved;
  if (d.xi_abs <= tol.xi) return Verdict::DegenerateSingular;
  if (std::abs(d.im_sqrt_zeta_c) > tol.im_sqrt_zeta_c) return Verdict::CuspidalEdge;
  if (std::abs(d.re_zeta_s) > tol.re_zeta_s) return Verdict::Swallowtail;
  return Verdict::ConeCandidate;
}

Diagnostics diagnostics_at(const CanonicalEvaluators& ev, cplx z, double t) {
  Invariants inv = invariants_at(ev, z);
  Diagnostics d;
  d.lambda_proxy = ev.base_log_abs_rho(z) - 2.0 * t;
  d.xi_abs = std::abs(inv.xi);
  d.im_sqrt_zeta_c = std::abs(std::sqrt(inv.zeta_c).imag());
  d.re_zeta_s = inv.zeta_s.real();
  return d;
}

ClassificationRecord classify_point(const CanonicalEvaluators& ev, cplx z, double t, const Thresholds& tol) {
  ClassificationRecord r;
  r.z = z;
  r.tol = tol;
  r.diag = diagnostics_at(ev, z, t);
  r.verdict = decide(r.diag, tol);
  return r;
}

cplx project_to_singular_set(const CanonicalEvaluators& ev, cplx z, double t, int max_iterations) {
  for (int it = 0; it < max_iterations; ++it) {
    double f = ev.base_log_abs_rho(z) - 2.0 * t;
    if (std::abs(f) < 1e-14) break;
    cplx grad = std::conj(ev.jet(z).dlog_rho());
    double g2 = std::norm(grad);
    if (g2 == 0.0) break;
    cplx step = f * grad / g2;
    z -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
  }
  return z;
}

TraceResult trace_singular_curves(const CanonicalEvaluators& ev, double t, const TraceOptions& opt) {
  const Domain& d = ev.domain();
  std::vector<double> values(d.node_count());
  parallel_for(values.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) values[i] = ev.node_base_log_abs_rho(i) - 2.0 * t;
  });
  ContourOptions copt;
  copt.field = [&](cplx z) {
    try {
      return ev.base_log_abs_rho(z) - 2.0 * t;
    } catch (const DomainError&) {
      return kNaN;
    }
  };
  ContourResult cr = trace_zero_set(d, values, copt);

  TraceResult out;
  out.saddle_cells = cr.saddle_cells;
  for (Polyline& pl : cr.curves) {
    SingularCurve c;
    c.points = std::move(pl.points);
    c.closed = pl.closed;
    std::vector<Diagnostics> diag(c.points.size());
    parallel_for(diag.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        try {
          diag[i] = diagnostics_at(ev, c.points[i], t);
        } catch (const DomainError&) {
          diag[i] = {kNaN, kNaN, kNaN, kNaN};
        }
      }
    });
    std::vector<double> xs, zc, zs;
    for (const auto& g : diag) {
      xs.push_back(g.xi_abs);
      zc.push_back(std::abs(g.im_sqrt_zeta_c));
      zs.push_back(std::abs(g.re_zeta_s));
    }
    c.tol = Thresholds::scaled(median_of(xs), median_of(zc), median_of(zs), opt.base_tol);
    for (std::size_t i = 0; i < c.points.size(); ++i)
      c.records.push_back({c.points[i], decide(diag[i], c.tol), diag[i], c.tol});
    out.curves.push_back(std::move(c));
  }
  return out;
}

// ------------------------------------------------------------- swallowtails

std::vector<ClassificationRecord> enumerate_swallowtails(const CanonicalEvaluators& ev, const SingularCurve& curve,
                                                         double t) {
  // sqrt(zeta_c) = D / sqrt(Q_hat); only sqrt(Q_hat) needs continuing, and it
  // has no branch points on the domain (umbilics and ends are excluded)
  struct Node {
    cplx z;
    cplx sqrt_q;
    cplx sq;
  };
  auto make = [&](cplx z, cplx prev_sqrt_q, bool first) {
    CanonicalJet j = ev.jet(z);
    cplx r = first ? std::sqrt(j.hopf) : continue_sqrt(j.hopf, prev_sqrt_q);
    return Node{z, r, j.dlog_rho() / r};
  };
  std::vector<cplx> pts = curve.points;
  if (pts.size() < 2) return {};
  if (curve.closed) pts.push_back(pts.front());

  // densify until the tracked root turns by less than pi/4 between neighbours
  std::vector<Node> nodes;
  nodes.push_back(make(pts[0], 0.0, true));
  std::function<void(const Node&, cplx, int)> extend = [&](const Node& a, cplx bz, int depth) {
    Node b = make(bz, a.sqrt_q, false);
    if (turn(a.sqrt_q, b.sqrt_q) <= M_PI / 4.0 || std::abs(bz - a.z) < 1e-12) {
      nodes.push_back(b);
      return;
    }
    if (depth > 12) throw BranchJump("sqrt(Q) jumps by more than pi/4 between close curve points; refine the grid");
    cplx mid = project_to_singular_set(ev, 0.5 * (a.z + bz), t);
    extend(a, mid, depth + 1);
    Node m = nodes.back();
    extend(m, bz, depth + 1);
  };
  for (std::size_t k = 1; k < pts.size(); ++k) {
    Node a = nodes.back();
    extend(a, pts[k], 0);
  }

  std::vector<ClassificationRecord> out;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Node& a = nodes[k];
    const Node& b = nodes[k + 1];
    bool pa = a.sq.imag() >= 0.0, pb = b.sq.imag() >= 0.0;
    if (pa == pb) continue;
    double lo = 0.0, hi = 1.0;
    cplx za = a.z, zb = b.z;
    double chord = std::abs(zb - za);
    cplx root = za;
    for (int it = 0; it < 80 && chord * (hi - lo) > 1e-10; ++it) {
      double mid = 0.5 * (lo + hi);
      cplx zm = project_to_singular_set(ev, za + mid * (zb - za), t);
      cplx sm = make(zm, a.sqrt_q, false).sq;
      if ((sm.imag() >= 0.0) == pa) lo = mid;
      else hi = mid;
      root = zm;
    }
    root = project_to_singular_set(ev, za + 0.5 * (lo + hi) * (zb - za), t);
    if (std::any_of(out.begin(), out.end(), [&](const ClassificationRecord& r) { return std::abs(r.z - root) < 1e-9; }))
      continue;
    out.push_back(classify_point(ev, root, t, curve.tol));
  }
  return out;
}

// ------------------------------------------------------------------- summary

IntervalSummary summarise(const CanonicalEvaluators& ev, double t) {
  IntervalSummary s;
  s.t = t;
  TraceResult tr = trace_singular_curves(ev, t);
  s.curves = static_cast<int>(tr.curves.size());
  for (const auto& c : tr.curves) {
    for (const auto& r : c.records) ++s.counts[r.verdict];
    for (const auto& r : enumerate_swallowtails(ev, c, t))
      if (r.verdict == Verdict::Swallowtail) ++s.swallowtails;
  }
  return s;
}

// --------------------------------------------------------------------- sweep

namespace {

struct NodeInv {
  cplx xi{kNaN, kNaN}, zc{kNaN, kNaN}, zs{kNaN, kNaN};
  double d_rel = kNaN;   // |D| relative to its two terms
  double s_rel = kNaN;   // |s(theta)-s(omega)| relative to its terms
  double log_rho = kNaN;
  bool ok = false;
};

std::vector<NodeInv> scan_invariants(const CanonicalEvaluators& ev) {
  const Domain& d = ev.domain();
  std::vector<NodeInv> out(d.node_count());
  parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      cplx z = d.node(i);
      if (d.is_excluded(z)) continue;
      try {
        CanonicalJet j = ev.jet(z);
        NodeInv& n = out[i];
        cplx D = j.dlog_rho();
        n.xi = D * j.hopf;
        n.zc = D * D / j.hopf;
        n.zs = j.schwarz_diff / j.hopf;
        double dscale = std::abs(j.theta_ld) + std::abs(j.omega_ld);
        n.d_rel = dscale > 0.0 ? std::abs(D) / dscale : 0.0;
        double sscale = std::abs(j.s_theta) + std::abs(j.s_omega);
        n.s_rel = sscale > 0.0 ? std::abs(j.schwarz_diff) / sscale : 0.0;
        n.log_rho = ev.node_base_log_abs_rho(i);
        n.ok = finite(n.xi) && finite(n.zc) && finite(n.zs) && std::isfinite(n.log_rho);
      } catch (const DomainError&) {
      }
    }
  });
  return out;
}

}  // namespace

TSweepReport sweep_t(const CanonicalEvaluators& ev, const SweepOptions& opt) {
  const Domain& d = ev.domain();
  const int n = d.n();
  TSweepReport rep;
  std::vector<NodeInv> inv = scan_invariants(ev);

  std::vector<double> xi_abs, zc_abs, zs_abs, lr;
  double d_rel_max = 0.0, s_rel_max = 0.0;
  for (const auto& v : inv) {
    if (!v.ok) continue;
    xi_abs.push_back(std::abs(v.xi));
    zc_abs.push_back(std::abs(v.zc));
    zs_abs.push_back(std::abs(v.zs));
    lr.push_back(v.log_rho);
    d_rel_max = std::max(d_rel_max, v.d_rel);
    s_rel_max = std::max(s_rel_max, v.s_rel);
  }
  if (lr.empty()) return rep;
  const double xi_med = median_of(xi_abs), zc_med = median_of(zc_abs), zs_med = median_of(zs_abs);
  const double lr_min = *std::min_element(lr.begin(), lr.end());
  const double lr_max = *std::max_element(lr.begin(), lr.end());
  const bool xi_zero = d_rel_max <= 1e-9;
  const bool zs_zero = s_rel_max <= 1e-9;

  auto xi_at = [&](cplx z) { return invariants_at(ev, z).xi; };
  std::vector<std::pair<std::string, cplx>> witnesses;

  // Z0
  if (xi_zero) {
    if (std::exp(lr_max) - std::exp(lr_min) <= 1e-8 * std::exp(lr_max)) {
      ExceptionalValue v;
      v.kind = "Z0";
      v.e2t = std::exp(median_of(lr));
      v.t = 0.5 * std::log(v.e2t);
      v.whole_domain = true;
      v.witnesses.push_back(base_point(ev.data()));
      rep.values.push_back(v);
    } else {
      rep.continua.push_back({"Z0", std::exp(lr_min), std::exp(lr_max), "xi vanishes identically"});
    }
  } else {
    for (int j = 1; j < n; ++j) {
      for (int i = 1; i < n; ++i) {
        const NodeInv& c = inv[d.index(i, j)];
        if (!c.ok) continue;
        double m = std::abs(c.xi);
        bool minimum = true;
        for (int dj = -1; dj <= 1 && minimum; ++dj)
          for (int di = -1; di <= 1; ++di) {
            if (!di && !dj) continue;
            const NodeInv& o = inv[d.index(i + di, j + dj)];
            if (o.ok && std::abs(o.xi) < m) {
              minimum = false;
              break;
            }
          }
        if (!minimum) continue;
        cplx z = d.node(i, j);
        bool converged = false;
        double residual = m;
        try {
          for (int it = 0; it < 60; ++it) {
            double h = 1e-6 * (1.0 + std::abs(z));
            cplx f = xi_at(z);
            cplx df = (xi_at(z + h) - xi_at(z - h)) / (2.0 * h);
            if (df == 0.0 || !finite(df)) break;
            cplx step = f / df;
            z -= step;
            if (!d.admits(z)) break;
            residual = std::abs(xi_at(z));
            if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) {
              converged = residual <= 1e-9 * (1.0 + xi_med);
              break;
            }
          }
        } catch (const DomainError&) {
          continue;
        }
        if (converged && d.admits(z)) witnesses.push_back({"Z0", z});
        else if (d.admits(z) && residual < 1e-4 * (1.0 + xi_med))
          rep.unresolved.push_back({z, "Z0", residual});
      }
    }
  }

  // Zc and Zs
  if (zs_zero) {
    bool zc_const_nonneg = true;
    cplx first{kNaN, kNaN};
    for (const auto& v : inv) {
      if (!v.ok) continue;
      if (!finite(first)) first = v.zc;
      if (std::abs(v.zc - first) > 1e-8 * (1.0 + std::abs(first))) zc_const_nonneg = false;
    }
    if (zc_const_nonneg && first.real() >= 0.0 && std::abs(first.imag()) <= 1e-8 * (1.0 + std::abs(first))) {
      rep.continua.push_back({"ZcZs", std::exp(lr_min), std::exp(lr_max),
                              "zeta_s and Im zeta_c vanish identically with zeta_c >= 0: every level set in range"});
    } else {
      std::vector<double> im(d.node_count(), kNaN);
      for (std::size_t k = 0; k < im.size(); ++k)
        if (inv[k].ok) im[k] = inv[k].zc.imag();
      ContourOptions copt;
      copt.field = [&](cplx z) {
        try {
          return invariants_at(ev, z).zeta_c.imag();
        } catch (const DomainError&) {
          return kNaN;
        }
      };
      ContourResult cr = trace_zero_set(d, im, copt);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& pl : cr.curves)
        for (cplx z : pl.points) {
          try {
            if (invariants_at(ev, z).zeta_c.real() < 0.0) continue;
            double l = ev.base_log_abs_rho(z);
            lo = std::min(lo, l);
            hi = std::max(hi, l);
          } catch (const DomainError&) {
          }
        }
      if (lo <= hi) rep.continua.push_back({"ZcZs", std::exp(lo), std::exp(hi), "zeta_s vanishes identically; Zc is a curve"});
    }
  } else {
    const double scale = zc_med + zs_med;
    auto F = [&](cplx z) {
      Invariants iv = invariants_at(ev, z);
      return Eigen::Vector2d(iv.zeta_c.imag(), iv.zeta_s.real());
    };
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        std::size_t c[4] = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
        bool ok = true;
        for (auto k : c) ok = ok && inv[k].ok;
        if (!ok) continue;
        auto changes = [&](auto get) {
          bool pos = false, neg = false;
          for (auto k : c) (get(inv[k]) >= 0.0 ? pos : neg) = true;
          return pos && neg;
        };
        if (!changes([](const NodeInv& v) { return v.zc.imag(); }) || !changes([](const NodeInv& v) { return v.zs.real(); }))
          continue;
        cplx z = 0.25 * (d.node(c[0]) + d.node(c[1]) + d.node(c[2]) + d.node(c[3]));
        bool converged = false;
        double residual = kNaN;
        try {
          for (int it = 0; it < 40; ++it) {
            Eigen::Vector2d f = F(z);
            residual = f.norm();
            if (residual <= 1e-11 * (1.0 + scale)) {
              converged = true;
              break;
            }
            double h = 1e-7 * (1.0 + std::abs(z));
            Eigen::Matrix2d J;
            J.col(0) = (F(z + h) - F(z - h)) / (2.0 * h);
            J.col(1) = (F(z + cplx(0.0, h)) - F(z - cplx(0.0, h))) / (2.0 * h);
            Eigen::Vector2d step = J.jacobiSvd(Eigen::ComputeFullU | Eigen::ComputeFullV).solve(f);
            z -= cplx(step(0), step(1));
            if (!d.admits(z)) break;
          }
        } catch (const DomainError&) {
          continue;
        }
        if (!d.admits(z)) continue;
        if (converged) {
          double re = invariants_at(ev, z).zeta_c.real();
          if (re >= -1e-9 * (1.0 + scale)) witnesses.push_back({"ZcZs", z});
        } else if (residual < 1e-4 * (1.0 + scale)) {
          rep.unresolved.push_back({z, "ZcZs", residual});
        }
      }
    }
  }

  // values from witnesses, merged at relative 1e-8
  std::vector<ExceptionalValue> vals;
  for (const auto& [kind, z] : witnesses) {
    double e2t = std::exp(ev.base_log_abs_rho(z));
    auto it = std::find_if(vals.begin(), vals.end(), [&](const ExceptionalValue& v) {
      return v.kind == kind && std::abs(v.e2t - e2t) <= 1e-8 * std::max(1.0, e2t);
    });
    if (it != vals.end()) {
      if (std::none_of(it->witnesses.begin(), it->witnesses.end(), [&](cplx w) { return std::abs(w - z) < 1e-8; }))
        it->witnesses.push_back(z);
      continue;
    }
    ExceptionalValue v;
    v.kind = kind;
    v.e2t = e2t;
    v.t = 0.5 * std::log(e2t);
    v.witnesses.push_back(z);
    Diagnostics g = diagnostics_at(ev, z, v.t);
    v.xi_abs = g.xi_abs;
    v.im_sqrt_zeta_c = g.im_sqrt_zeta_c;
    v.re_zeta_s = g.re_zeta_s;
    vals.push_back(v);
  }
  for (auto& v : vals)
    std::sort(v.witnesses.begin(), v.witnesses.end(),
              [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  rep.values.insert(rep.values.end(), vals.begin(), vals.end());
  std::sort(rep.values.begin(), rep.values.end(),
            [](const ExceptionalValue& a, const ExceptionalValue& b) { return a.e2t < b.e2t; });

  std::vector<double> probes = opt.probe_t;
  if (opt.probe_between && rep.continua.empty() && !rep.values.empty()) {
    std::vector<double> ts;
    for (const auto& v : rep.values)
      if (!v.whole_domain) ts.push_back(v.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)); }),
             ts.end());
    if (!ts.empty()) {
      probes.push_back(ts.front() - 0.25);
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) probes.push_back(0.5 * (ts[k] + ts[k + 1]));
      probes.push_back(ts.back() + 0.25);
    }
  }
  std::sort(probes.begin(), probes.end());
  for (double t : probes) {
    try {
      rep.intervals.push_back(summarise(ev, t));
    } catch (const BranchJump& e) {
      rep.unresolved.push_back({cplx(0.0), "probe t=" + std::to_string(t) + ": " + e.what(), 0.0});
    }
  }
  return rep;
}

// ---------------------------------------------------------------- f_h family

ClassificationRecord classify_fh(const MeroFn& h, cplx z, const Thresholds& tol) {
  cplx h0 = h(z), h1 = h.d(1, z), h2 = h.d(2, z);
  ClassificationRecord r;
  r.z = z;
  r.tol = tol;
  r.diag.lambda_proxy = h0.real();
  r.diag.xi_abs = std::abs(h1 * std::exp(h0));
  r.diag.im_sqrt_zeta_c = (std::exp(-0.5 * h0) * h1).imag();
  r.diag.re_zeta_s = (std::exp(-h0) * (h2 - 0.5 * h1 * h1)).real();
  r.verdict = decide(r.diag, tol);
  return r;
}

}  // namespace flatfront
