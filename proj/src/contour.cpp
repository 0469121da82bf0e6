#include "flatfront/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <boost/math/tools/roots.hpp>

namespace flatfront {

cplx refine_on_segment(const std::function<double(cplx)>& f, cplx a, cplx b, double fa, double fb,
                       int max_iterations) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  auto g = [&](double s) { return f(a + s * (b - a)); };
  boost::uintmax_t iters = static_cast<boost::uintmax_t>(max_iterations);
  try {
    auto r = boost::math::tools::toms748_solve(g, 0.0, 1.0, fa, fb,
                                               boost::math::tools::eps_tolerance<double>(50), iters);
    return a + 0.5 * (r.first + r.second) * (b - a);
  } catch (const std::exception&) {
    double s = fa / (fa - fb);
    return a + s * (b - a);
  }
}

bool cell_clear(const Domain& d, int i, int j) {
  cplx lo = d.node(i, j);
  cplx hi = d.node(i + 1, j + 1);
  for (const Disk& k : d.excluded()) {
    double cx = std::clamp(k.center.real(), lo.real(), hi.real());
    double cy = std::clamp(k.center.imag(), lo.imag(), hi.imag());
    if (std::abs(k.center - cplx(cx, cy)) < k.radius) return false;
  }
  return true;
}

namespace {

// Corner values of cell (i,j) in the order (i,j), (i+1,j), (i+1,j+1), (i,j+1);
// false when the cell is unusable.
using CellValues = std::function<bool(int i, int j, std::array<double, 4>& f, std::array<cplx, 4>& ref)>;
// Refines a crossing on edge a->b; ref is the cell's reference value at a.
using EdgeRoot = std::function<cplx(cplx a, cplx b, double fa, double fb, cplx ref)>;
using CentreValue = std::function<double(cplx centre, const std::array<double, 4>& f, cplx ref0)>;

ContourResult trace_cells(const Domain& d, const CellValues& cell, const EdgeRoot& root, const CentreValue& centre_value) {
  const int n = d.n();
  const std::size_t h_edges = static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
  auto h_id = [&](int i, int j) { return static_cast<std::size_t>(j) * n + i; };
  auto v_id = [&](int i, int j) { return h_edges + static_cast<std::size_t>(j) * (n + 1) + i; };
  auto positive = [](double x) { return x >= 0.0; };

  ContourResult out;
  std::unordered_map<std::size_t, cplx> crossing;
  std::unordered_map<std::size_t, std::array<std::size_t, 2>> links;
  const std::size_t node_ids = h_edges + static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n);
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b) return;  // the curve only touches a node
    auto ia = links.find(a);
    if (ia != links.end() && (ia->second[0] == b || ia->second[1] == b)) return;
    for (std::size_t e : {a, b}) {
      auto it = links.find(e);
      std::size_t other = e == a ? b : a;
      if (it == links.end()) links.emplace(e, std::array<std::size_t, 2>{other, Domain::npos});
      else it->second[1] = other;
    }
  };
  // A crossing exactly on a node is keyed by the node, so cells that see it
  // from different sides (or with different branch signs) share it.
  auto edge_point = [&](std::size_t id, std::size_t ia, std::size_t ib, double fa, double fb, cplx ref) {
    if (fa == 0.0 || fb == 0.0) {
      std::size_t node = fa == 0.0 ? ia : ib;
      id = node_ids + node;
      crossing.emplace(id, d.node(node));
      return id;
    }
    if (crossing.find(id) == crossing.end()) crossing.emplace(id, root(d.node(ia), d.node(ib), fa, fb, ref));
    return id;
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      std::array<std::size_t, 4> idx = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1),
                                        d.index(i, j + 1)};
      std::array<double, 4> f{};
      std::array<cplx, 4> ref{};
      if (!cell(i, j, f, ref)) continue;
      int mask = 0;
      for (int k = 0; k < 4; ++k)
        if (positive(f[k])) mask |= 1 << k;
      if (mask == 0 || mask == 15) continue;
      if (!cell_clear(d, i, j)) continue;

      // edges: 0 bottom (c0-c1), 1 right (c1-c2), 2 top (c3-c2), 3 left (c0-c3)
      std::array<std::size_t, 4> eid = {h_id(i, j), v_id(i + 1, j), h_id(i, j + 1), v_id(i, j)};
      std::array<std::array<int, 2>, 4> ends = {{{0, 1}, {1, 2}, {3, 2}, {0, 3}}};
      std::vector<int> crossed;
      for (int e = 0; e < 4; ++e) {
        int a = ends[e][0], b = ends[e][1];
        if (positive(f[a]) != positive(f[b])) {
          crossed.push_back(e);
          eid[e] = edge_point(eid[e], idx[a], idx[b], f[a], f[b], ref[a]);
        }
      }
      if (crossed.size() == 2) {
        link(eid[crossed[0]], eid[crossed[1]]);
      } else if (crossed.size() == 4) {
        ++out.saddle_cells;
        cplx centre = 0.25 * (d.node(idx[0]) + d.node(idx[1]) + d.node(idx[2]) + d.node(idx[3]));
        double fc = centre_value(centre, f, ref[0]);
        if (positive(fc) == positive(f[0])) {
          // corners 0 and 2 joined through the centre: isolate 1 and 3
          link(eid[0], eid[1]);
          link(eid[2], eid[3]);
        } else {
          link(eid[3], eid[0]);
          link(eid[1], eid[2]);
        }
      }
    }
  }

  std::vector<std::size_t> ids;
  ids.reserve(links.size());
  for (const auto& kv : links) ids.push_back(kv.first);
  std::sort(ids.begin(), ids.end());
  std::unordered_map<std::size_t, bool> used;

  auto walk = [&](std::size_t start) {
    Polyline pl;
    std::size_t prev = Domain::npos, cur = start;
    while (cur != Domain::npos && !used[cur]) {
      used[cur] = true;
      pl.points.push_back(crossing.at(cur));
      const auto& nb = links.at(cur);
      std::size_t next = nb[0] != prev ? nb[0] : nb[1];
      if (nb[0] == prev && nb[1] == prev) next = Domain::npos;
      if (next != Domain::npos && next == start && pl.points.size() > 2) {
        pl.closed = true;
        break;
      }
      prev = cur;
      cur = next;
    }
    return pl;
  };

  for (std::size_t id : ids) {
    if (used[id]) continue;
    if (links.at(id)[1] == Domain::npos) out.curves.push_back(walk(id));
  }
  for (std::size_t id : ids) {
    if (used[id]) continue;
    out.curves.push_back(walk(id));
  }
  return out;
}

}  // namespace

ContourResult trace_zero_set(const Domain& d, const std::vector<double>& v, const ContourOptions& opt) {
  auto cell = [&](int i, int j, std::array<double, 4>& f, std::array<cplx, 4>&) {
    const std::array<std::size_t, 4> idx = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
    for (int k = 0; k < 4; ++k) {
      f[k] = v[idx[k]];
      if (!std::isfinite(f[k])) return false;
    }
    return true;
  };
  auto root = [&](cplx a, cplx b, double fa, double fb, cplx) {
    return opt.field ? refine_on_segment(opt.field, a, b, fa, fb, opt.max_root_iterations) : a + (fa / (fa - fb)) * (b - a);
  };
  auto centre = [&](cplx c, const std::array<double, 4>& f, cplx) {
    return opt.field ? opt.field(c) : 0.25 * (f[0] + f[1] + f[2] + f[3]);
  };
  return trace_cells(d, cell, root, centre);
}

namespace {

cplx align(cplx w, cplx ref) { return std::norm(w - ref) <= std::norm(w + ref) ? w : -w; }

}  // namespace

ContourResult trace_branch_zero_set(const Domain& d, const std::vector<cplx>& roots,
                                    const std::function<cplx(cplx)>& root_at,
                                    const std::function<double(cplx, cplx)>& value, int max_root_iterations) {
  auto usable = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()) && z != 0.0; };
  auto cell = [&](int i, int j, std::array<double, 4>& f, std::array<cplx, 4>& ref) {
    const std::array<std::size_t, 4> idx = {d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
    for (int k = 0; k < 4; ++k) {
      ref[k] = roots[idx[k]];
      if (!usable(ref[k])) return false;
    }
    for (int k = 1; k < 4; ++k) ref[k] = align(ref[k], ref[k - 1]);
    if (align(ref[3], ref[0]) != ref[3]) return false;  // the sign does not close up around the cell
    for (int k = 0; k < 4; ++k) {
      f[k] = value(d.node(idx[k]), ref[k]);
      if (!std::isfinite(f[k])) return false;
    }
    return true;
  };
  auto root = [&](cplx a, cplx b, double fa, double fb, cplx ref) {
    auto g = [&](cplx z) { return value(z, align(root_at(z), ref)); };
    return refine_on_segment(g, a, b, fa, fb, max_root_iterations);
  };
  auto centre = [&](cplx c, const std::array<double, 4>&, cplx ref0) { return value(c, align(root_at(c), ref0)); };
  return trace_cells(d, cell, root, centre);
}

}  // namespace flatfront
