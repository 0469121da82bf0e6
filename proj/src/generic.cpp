#include "flatfront/generic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace flatfront {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double len(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// second-order differences along one grid direction
template <class T, class Get, class Combine>
T diff_along(int i, int n, double h, Get get, Combine lin) {
  if (i == 0) return lin(get(0), -3.0 / (2 * h), get(1), 4.0 / (2 * h), get(2), -1.0 / (2 * h));
  if (i == n) return lin(get(n), 3.0 / (2 * h), get(n - 1), -4.0 / (2 * h), get(n - 2), 1.0 / (2 * h));
  return lin(get(i + 1), 1.0 / (2 * h), get(i - 1), -1.0 / (2 * h), get(i), 0.0);
}

struct Derivs {
  std::vector<Vec3> fu, fv;
};

Derivs derivatives(const SampledMap& m) {
  const int n = m.n;
  Domain d = m.grid();
  Derivs out;
  out.fu.resize(d.node_count());
  out.fv.resize(d.node_count());
  auto lin = [](const Vec3& a, double ca, const Vec3& b, double cb, const Vec3& c, double cc) {
    return add(add(scale(a, ca), scale(b, cb)), scale(c, cc));
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      out.fu[d.index(i, j)] = diff_along<Vec3>(i, n, d.hx(), [&](int k) { return m.f[d.index(k, j)]; }, lin);
      out.fv[d.index(i, j)] = diff_along<Vec3>(j, n, d.hy(), [&](int k) { return m.f[d.index(i, k)]; }, lin);
    }
  return out;
}

template <class T, class Lerp>
T bilinear(const Domain& d, const std::vector<T>& v, cplx p, Lerp lerp) {
  double x = (p.real() - d.window().x0) / d.hx();
  double y = (p.imag() - d.window().y0) / d.hy();
  int i = std::clamp(static_cast<int>(std::floor(x)), 0, d.n() - 1);
  int j = std::clamp(static_cast<int>(std::floor(y)), 0, d.n() - 1);
  double a = x - i, b = y - j;
  T lo = lerp(v[d.index(i, j)], v[d.index(i + 1, j)], a);
  T hi = lerp(v[d.index(i, j + 1)], v[d.index(i + 1, j + 1)], a);
  return lerp(lo, hi, b);
}

Vec3 lerp3(const Vec3& a, const Vec3& b, double s) { return add(scale(a, 1.0 - s), scale(b, s)); }

}  // namespace

SampledMap read_sampled_csv(std::istream& in) {
  std::vector<std::array<double, 8>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::array<double, 8> r{};
    std::istringstream ss(line);
    std::string cell;
    int k = 0;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      if (k == 8) throw std::invalid_argument("line " + std::to_string(line_no) + ": more than 8 columns");
      try {
        std::size_t used = 0;
        r[k] = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) numeric = false;
      } catch (const std::logic_error&) {
        numeric = false;
      }
      ++k;
    }
    if (!numeric && rows.empty() && line_no == 1) continue;  // header
    if (!numeric || k != 8)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 8 numeric columns");
    rows.push_back(r);
  }
  if (rows.size() < 9) throw std::invalid_argument("sampled grid needs at least 3 x 3 rows");

  std::vector<double> us, vs;
  for (const auto& r : rows) {
    us.push_back(r[0]);
    vs.push_back(r[1]);
  }
  auto axis = [](std::vector<double>& a, const char* name) {
    std::sort(a.begin(), a.end());
    double span = a.back() - a.front();
    double eps = 1e-9 * std::max(1.0, std::abs(span));
    a.erase(std::unique(a.begin(), a.end(), [&](double x, double y) { return y - x <= eps; }), a.end());
    if (a.size() < 3) throw std::invalid_argument(std::string("too few distinct ") + name + " values");
    double h = span / static_cast<double>(a.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - (a.front() + static_cast<double>(i) * h)) > 1e-6 * h)
        throw std::invalid_argument(std::string(name) + " values are not uniformly spaced");
  };
  axis(us, "u");
  axis(vs, "v");
  if (us.size() != vs.size()) throw std::invalid_argument("sampled grid must be square");
  const int n = static_cast<int>(us.size()) - 1;
  if (rows.size() != us.size() * vs.size()) throw std::invalid_argument("sampled grid has missing or repeated nodes");

  SampledMap m;
  m.window = {us.front(), us.back(), vs.front(), vs.back()};
  m.n = n;
  m.f.assign(rows.size(), Vec3{});
  m.normal.assign(rows.size(), Vec3{});
  std::vector<unsigned char> seen(rows.size(), 0);
  const double hu = (us.back() - us.front()) / n, hv = (vs.back() - vs.front()) / n;
  Domain d = m.grid();
  for (const auto& r : rows) {
    int i = static_cast<int>(std::lround((r[0] - us.front()) / hu));
    int j = static_cast<int>(std::lround((r[1] - vs.front()) / hv));
    std::size_t idx = d.index(i, j);
    if (seen[idx]) throw std::invalid_argument("sampled grid has missing or repeated nodes");
    seen[idx] = 1;
    m.f[idx] = {r[2], r[3], r[4]};
    m.normal[idx] = {r[5], r[6], r[7]};
  }
  return m;
}

SampledMap sample_map(const std::function<std::pair<Vec3, Vec3>(double, double)>& fn, const Window& w, int n) {
  SampledMap m;
  m.window = w;
  m.n = n;
  Domain d(w, n);
  m.f.resize(d.node_count());
  m.normal.resize(d.node_count());
  for (std::size_t k = 0; k < d.node_count(); ++k) {
    cplx p = d.node(k);
    auto [f, nu] = fn(p.real(), p.imag());
    m.f[k] = f;
    m.normal[k] = nu;
  }
  return m;
}

SampledMap sample_front_in_ball(const LegendrianLift& lift, const Window& w, int n) {
  SampledMap m;
  m.window = w;
  m.n = n;
  Domain d(w, n);
  m.f.resize(d.node_count());
  m.normal.resize(d.node_count());
  parallel_for(d.node_count(), [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) {
      SL2 E = lift.evaluate(d.node(k)).E;
      MinkowskiVec x = to_minkowski(herm_from_lift(E));
      MinkowskiVec nu = to_minkowski(unit_normal(E));
      double s = 1.0 / (1.0 + x.x0);
      m.f[k] = {x.x1 * s, x.x2 * s, x.x3 * s};
      Vec3 push = sub(scale({nu.x1, nu.x2, nu.x3}, s), scale({x.x1, x.x2, x.x3}, nu.x0 * s * s));
      m.normal[k] = scale(push, 1.0 / len(push));
    }
  });
  return m;
}

double front_condition_residual(const SampledMap& m) {
  Derivs dv = derivatives(m);
  double worst = 0.0;
  for (std::size_t k = 0; k < m.f.size(); ++k) {
    double denom = len(dv.fu[k]) + len(dv.fv[k]);
    if (denom == 0.0) continue;
    worst = std::max(worst, (std::abs(dot(dv.fu[k], m.normal[k])) + std::abs(dot(dv.fv[k], m.normal[k]))) / denom);
  }
  return worst;
}

std::vector<double> lambda_field(const SampledMap& m) {
  Derivs dv = derivatives(m);
  std::vector<double> lam(m.f.size());
  for (std::size_t k = 0; k < m.f.size(); ++k) lam[k] = dot(cross3(dv.fu[k], dv.fv[k]), m.normal[k]);
  return lam;
}

NullField null_directions(const SampledMap& m, const Polyline& curve) {
  Domain d = m.grid();
  Derivs dv = derivatives(m);
  std::vector<double> lam = lambda_field(m);
  std::vector<cplx> grad(lam.size());
  for (int j = 0; j <= m.n; ++j)
    for (int i = 0; i <= m.n; ++i) {
      auto lin = [](double a, double ca, double b, double cb, double c, double cc) { return a * ca + b * cb + c * cc; };
      double gx = diff_along<double>(i, m.n, d.hx(), [&](int k) { return lam[d.index(k, j)]; }, lin);
      double gy = diff_along<double>(j, m.n, d.hy(), [&](int k) { return lam[d.index(i, k)]; }, lin);
      grad[d.index(i, j)] = cplx(gx, gy);
    }

  NullField nf;
  nf.closed = curve.closed;
  const auto& pts = curve.points;
  const std::size_t count = pts.size();
  double s = 0.0;
  cplx prev_eta = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    NullSample ns;
    ns.gamma = pts[k];
    if (k > 0) s += std::abs(pts[k] - pts[k - 1]);
    ns.s = s;
    cplx ahead, behind;
    if (curve.closed) {
      ahead = pts[(k + 1) % count];
      behind = pts[(k + count - 1) % count];
    } else {
      ahead = pts[std::min(k + 1, count - 1)];
      behind = pts[k == 0 ? 0 : k - 1];
    }
    // the curve is {lambda = 0}: its tangent is grad(lambda) turned by 90 degrees,
    // oriented along the polyline
    cplx chord = ahead - behind;
    cplx g = bilinear(d, grad, pts[k], [](cplx a, cplx b, double t) { return (1.0 - t) * a + t * b; });
    cplx tan = cplx(0.0, 1.0) * g;
    if (std::abs(tan) == 0.0) tan = chord;
    if ((tan * std::conj(chord)).real() < 0.0) tan = -tan;
    ns.tangent = std::abs(tan) > 0.0 ? tan / std::abs(tan) : cplx(1.0);

    Vec3 fu = bilinear(d, dv.fu, pts[k], lerp3), fv = bilinear(d, dv.fv, pts[k], lerp3);
    Eigen::Matrix<double, 3, 2> J;
    J << fu[0], fv[0], fu[1], fv[1], fu[2], fv[2];
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(J, Eigen::ComputeFullV);
    double s0 = svd.singularValues()(0), s1 = svd.singularValues()(1);
    if (!(s0 > 1e-14)) throw RankError("Jacobian vanishes on the singular curve: not a front sample");
    Eigen::Vector2d eta = svd.matrixV().col(1);
    cplx e(eta(0), eta(1));
    if (k > 0 && (e * std::conj(prev_eta)).real() < 0.0) e = -e;
    prev_eta = e;
    ns.eta = e;
    ns.det = ns.tangent.real() * e.imag() - ns.tangent.imag() * e.real();
    ns.residual = s1 / s0;
    ns.grad_lambda = std::abs(g);
    nf.samples.push_back(ns);
  }
  return nf;
}

const char* to_string(GenericType t) {
  switch (t) {
    case GenericType::TypeC: return "TypeC";
    case GenericType::TypeS: return "TypeS";
    case GenericType::Neither: return "Neither";
    case GenericType::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

TypeTestResult type_test(const NullField& nf, cplx p, double tol, double grid_step) {
  TypeTestResult r;
  const auto& sm = nf.samples;
  if (sm.size() < 5) return r;
  // nearest point of the polyline
  double best = std::numeric_limits<double>::infinity(), sp = 0.0;
  std::size_t segs = nf.closed ? sm.size() : sm.size() - 1;
  double total = sm.back().s + (nf.closed ? std::abs(sm.front().gamma - sm.back().gamma) : 0.0);
  for (std::size_t k = 0; k < segs; ++k) {
    cplx a = sm[k].gamma, b = sm[(k + 1) % sm.size()].gamma;
    double l = std::abs(b - a);
    double u = l > 0.0 ? std::clamp(((p - a) * std::conj(b - a)).real() / (l * l), 0.0, 1.0) : 0.0;
    double dist = std::abs(p - (a + u * (b - a)));
    if (dist < best) {
      best = dist;
      sp = sm[k].s + u * l;
      r.at = a + u * (b - a);
    }
  }
  auto det_at = [&](double s) {
    if (nf.closed) s = std::fmod(std::fmod(s, total) + total, total);
    std::size_t k = 0;
    while (k + 1 < sm.size() && sm[k + 1].s < s) ++k;
    const NullSample& a = sm[k];
    const NullSample& b = (k + 1 < sm.size()) ? sm[k + 1] : sm[0];
    double sb = (k + 1 < sm.size()) ? b.s : total;
    double u = sb > a.s ? (s - a.s) / (sb - a.s) : 0.0;
    return (1.0 - u) * a.det + u * b.det;
  };
  double spacing = total / static_cast<double>(segs);
  double delta = 2.0 * spacing;
  if (!nf.closed && (sp - 2.0 * delta < 0.0 || sp + 2.0 * delta > sm.back().s)) return r;
  if (grid_step <= 0.0) grid_step = spacing;
  r.tol = tol > 0.0 ? tol : 10.0 * grid_step * grid_step;
  r.det = det_at(sp);
  r.det_derivative = (-det_at(sp + 2 * delta) + 8 * det_at(sp + delta) - 8 * det_at(sp - delta) + det_at(sp - 2 * delta)) /
                     (12.0 * delta);
  if (std::abs(r.det) > r.tol) r.type = GenericType::TypeC;
  else if (std::abs(r.det_derivative) > r.tol) r.type = GenericType::TypeS;
  else r.type = GenericType::Neither;
  return r;
}

GenericReport analyse(const SampledMap& m) {
  GenericReport rep;
  Domain d = m.grid();
  ContourResult cr = trace_zero_set(d, lambda_field(m));
  for (auto& pl : cr.curves) {
    if (pl.points.size() < 2) continue;
    rep.fields.push_back(null_directions(m, pl));
    rep.curves.push_back(std::move(pl));
  }
  return rep;
}

std::pair<Vec3, Vec3> cuspidal_edge_germ(double z, double w) {
  Vec3 f = {2 * w * w * w, -3 * w * w, z};
  Vec3 nu = {1.0, w, 0.0};
  return {f, scale(nu, 1.0 / len(nu))};
}

std::pair<Vec3, Vec3> swallowtail_germ(double z, double w) {
  Vec3 f = {3 * w * w * w * w + z * w * w, 4 * w * w * w + 2 * w * z, z};
  Vec3 nu = {1.0, -w, w * w};
  return {f, scale(nu, 1.0 / len(nu))};
}

}  // namespace flatfront
