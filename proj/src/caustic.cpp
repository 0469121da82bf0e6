#include "flatfront/caustic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace flatfront {

namespace {

const cplx I(0.0, 1.0);
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median_of(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return !std::isfinite(x); }), v.end());
  if (v.empty()) return 0.0;
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

cplx nearest_quarter(cplx principal, cplx previous) {
  cplx best = principal;
  cplx r = principal;
  for (int k = 0; k < 4; ++k, r *= I)
    if (std::abs(r - previous) < std::abs(best - previous)) best = r;
  return best;
}

const Mat2 kP = (1.0 / std::sqrt(2.0)) * Mat2{1.0, I, I, 1.0};

}  // namespace

PrincipalCurvatures principal_curvatures(const CanonicalEvaluators& ev, cplx z) {
  PrincipalCurvatures pc;
  double lr = ev.log_abs_rho(z);
  pc.r1 = 0.5 * lr;
  pc.singular = std::abs(lr) < 1e-12;
  pc.kappa1 = pc.singular ? std::numeric_limits<double>::infinity() : 1.0 / std::tanh(pc.r1);
  pc.kappa2 = std::tanh(pc.r1);
  return pc;
}

void AlphaBranch::update(cplx alpha) {
  cplx principal = std::pow(alpha, -0.25);
  if (!started_) {
    q_ = principal;
    for (int k = 0; k < ((seed_ % 4) + 4) % 4; ++k) q_ *= I;
    started_ = true;
    return;
  }
  q_ = nearest_quarter(principal, q_);
}

SL2 caustic_lift(const GaussData& g, cplx z, AlphaBranch& br) {
  cplx G = g.G(z), H = g.Gstar(z), dG = g.G.d(1, z), dH = g.Gstar.d(1, z);
  if (dG == 0.0 || dH == 0.0) throw DomainError("caustic lift needs dG, dG* != 0");
  br.update(dG / dH);
  cplx s = br.sqrt_alpha();
  cplx pref = std::exp(I * (M_PI / 4.0)) * br.quarter_inv() / (std::sqrt(2.0) * std::sqrt(G - H));
  return pref * Mat2{G + s * H, I * (G - s * H), 1.0 + s, I * (1.0 - s)};
}

Mat2 lift_gauge(const GaussData& g) {
  cplx z0 = g.z0;
  cplx G = g.G(z0), H = g.Gstar(z0);
  Mat2 m{G, H / (G - H), 1.0, 1.0 / (G - H)};
  return m.inverse();
}

SL2 caustic_lift_from_front(const SL2& e, cplx rho_t, cplx& quarter) {
  cplx principal = std::pow(rho_t, 0.25);
  quarter = quarter == 0.0 ? principal : nearest_quarter(principal, quarter);
  return e * Mat2::diag(quarter, 1.0 / quarter) * kP;
}

HermPoint caustic_point(const SL2& e, double log_abs_rho_t) {
  double h = 0.5 * log_abs_rho_t;
  return HermPoint(e * Mat2::diag(std::exp(h), std::exp(-h)) * e.adjoint());
}

std::pair<cplx, cplx> caustic_gauss(const GaussData& g, cplx z, AlphaBranch& br) {
  cplx G = g.G(z), H = g.Gstar(z), dG = g.G.d(1, z), dH = g.Gstar.d(1, z);
  if (dG == 0.0 || dH == 0.0) throw DomainError("caustic Gauss maps need dG, dG* != 0");
  br.update(dG / dH);
  cplx s = br.sqrt_alpha();
  if (std::abs(1.0 + s) < 1e-14 || std::abs(1.0 - s) < 1e-14)
    throw DomainError("1 +- sqrt(alpha) vanishes: the caustic Gauss map has a pole here");
  return {(G + s * H) / (1.0 + s), (G - s * H) / (1.0 - s)};
}

CausticForms caustic_forms(const CanonicalJet& j, cplx sqrt_q) {
  cplx D = j.dlog_rho();
  cplx dD = j.schwarz_diff + 0.5 * (j.theta_ld * j.theta_ld - j.omega_ld * j.omega_ld);
  cplx dsq = 0.5 * sqrt_q * (j.omega_ld + j.theta_ld);
  return {sqrt_q - 0.25 * I * D, sqrt_q + 0.25 * I * D, dsq - 0.25 * I * dD, dsq + 0.25 * I * dD};
}

cplx caustic_hopf(const CanonicalJet& j) {
  cplx D = j.dlog_rho();
  return j.hopf + D * D / 16.0;
}

const char* to_string(CausticVerdict v) {
  switch (v) {
    case CausticVerdict::Regular: return "Regular";
    case CausticVerdict::CuspidalEdge: return "CuspidalEdge";
    case CausticVerdict::NonCuspidal: return "NonCuspidal";
    case CausticVerdict::Degenerate: return "Degenerate";
  }
  return "Regular";
}

double hausdorff_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_sided = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0.0;
    for (cplx p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (cplx q : y) best = std::min(best, std::norm(p - q));
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(one_sided(a, b), one_sided(b, a));
}

CausticLocus caustic_singularities(const CanonicalEvaluators& ev, double base_tol) {
  const Domain& d = ev.domain();
  const int n = d.n();
  std::vector<std::optional<CanonicalJet>> jets(d.node_count());
  parallel_for(jets.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      cplx z = d.node(i);
      if (d.is_excluded(z)) continue;
      try {
        jets[i] = ev.jet(z);
      } catch (const DomainError&) {
      }
    }
  });
  auto zeta_c = [](const CanonicalJet& j) {
    cplx D = j.dlog_rho();
    return D * D / j.hopf;
  };

  CausticLocus out;

  // shortcut: Zc = {zeta_c in [0, inf)} = {Im sqrt(zeta_c) = 0}, with
  // sqrt(zeta_c) = D / sqrt(Q_hat) and sqrt(Q_hat) aligned cell by cell
  std::vector<cplx> roots(d.node_count(), cplx(kNaN, kNaN));
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (jets[i]) roots[i] = std::sqrt(jets[i]->hopf);
  auto root_at = [&](cplx z) {
    try {
      return std::sqrt(ev.jet(z).hopf);
    } catch (const DomainError&) {
      return cplx(kNaN, kNaN);
    }
  };
  auto im_sqrt_zeta_c = [&](cplx z, cplx sqrt_q) {
    try {
      return (ev.jet(z).dlog_rho() / sqrt_q).imag();
    } catch (const DomainError&) {
      return kNaN;
    }
  };
  ContourResult cr = trace_branch_zero_set(d, roots, root_at, im_sqrt_zeta_c);
  std::vector<cplx> vertices;
  for (const Polyline& pl : cr.curves) {
    out.zc_curves.push_back(pl);
    vertices.insert(vertices.end(), pl.points.begin(), pl.points.end());
  }

  // direct: sign changes of |theta_c|^2 - |omega_c|^2 along grid edges, with
  // sqrt(Q) continued from the first end of each edge
  auto lambda_c = [](const CanonicalJet& j, cplx sq) {
    CausticForms f = caustic_forms(j, sq);
    return std::norm(f.theta_c) - std::norm(f.omega_c);
  };
  std::vector<unsigned char> edge_ok_h(d.node_count(), 0), edge_ok_v(d.node_count(), 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      std::size_t c[4] = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
      bool ok = true;
      for (auto k : c) ok = ok && jets[k].has_value();
      if (!ok || !cell_clear(d, i, j)) continue;
      edge_ok_h[d.index(i, j)] = edge_ok_h[d.index(i, j + 1)] = 1;
      edge_ok_v[d.index(i, j)] = edge_ok_v[d.index(i + 1, j)] = 1;
    }
  auto edge = [&](std::size_t a, std::size_t b) {
    cplx za = d.node(a), zb = d.node(b);
    cplx sqa = std::sqrt(jets[a]->hopf);
    cplx sqb = continue_sqrt(jets[b]->hopf, sqa);
    double la = lambda_c(*jets[a], sqa), lb = lambda_c(*jets[b], sqb);
    if ((la >= 0.0) == (lb >= 0.0)) return;
    auto f = [&](cplx z) {
      CanonicalJet j = ev.jet(z);
      return lambda_c(j, continue_sqrt(j.hopf, sqa));
    };
    out.direct_points.push_back(refine_on_segment(f, za, zb, la, lb));
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      std::size_t a = d.index(i, j);
      if (i < n && edge_ok_h[a]) edge(a, d.index(i + 1, j));
      if (j < n && edge_ok_v[a]) edge(a, d.index(i, j + 1));
    }

  out.hausdorff = hausdorff_distance(out.direct_points, vertices);

  // verdicts at the Zc vertices, both ways
  struct Raw {
    double re_zc, re_zs, sd_abs, delta_abs, cusp;
  };
  std::vector<Raw> raw;
  for (cplx z : vertices) {
    CanonicalJet j = ev.jet(z);
    cplx zc = zeta_c(j), zs = j.schwarz_diff / j.hopf;
    CausticForms f = caustic_forms(j, std::sqrt(j.hopf));
    cplx delta = f.d_theta_c * f.omega_c - f.d_omega_c * f.theta_c;
    cplx cusp = (f.d_theta_c / f.theta_c - f.d_omega_c / f.omega_c) / std::sqrt(f.omega_c * f.theta_c);
    raw.push_back({zc.real(), zs.real(), std::abs(j.schwarz_diff), std::abs(delta), cusp.imag()});
  }
  std::vector<double> m_zs, m_sd, m_delta, m_cusp;
  for (const Raw& r : raw) {
    m_zs.push_back(std::abs(r.re_zs));
    m_sd.push_back(r.sd_abs);
    m_delta.push_back(r.delta_abs);
    m_cusp.push_back(std::abs(r.cusp));
  }
  double t_zs = base_tol * (1.0 + median_of(m_zs)), t_sd = base_tol * (1.0 + median_of(m_sd));
  double t_delta = base_tol * (1.0 + median_of(m_delta)), t_cusp = base_tol * (1.0 + median_of(m_cusp));
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Raw& r = raw[k];
    CausticRecord rec;
    rec.z = vertices[k];
    rec.re_zeta_c = r.re_zc;
    rec.re_zeta_s = r.re_zs;
    rec.schwarz_diff_abs = r.sd_abs;
    rec.from_invariants = r.sd_abs <= t_sd ? CausticVerdict::Degenerate
                          : std::abs(r.re_zs) > t_zs ? CausticVerdict::CuspidalEdge
                                                     : CausticVerdict::NonCuspidal;
    rec.from_forms = r.delta_abs <= t_delta ? CausticVerdict::Degenerate
                     : std::abs(r.cusp) > t_cusp ? CausticVerdict::CuspidalEdge
                                                 : CausticVerdict::NonCuspidal;
    out.records.push_back(rec);
  }
  return out;
}

}  // namespace flatfront
