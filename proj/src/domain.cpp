#include "flatfront/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>

namespace flatfront {

Domain::Domain(Window w, int n, std::vector<Disk> excluded)
    : window_(w), n_(n), excluded_(std::move(excluded)) {
  if (n < 2) throw std::invalid_argument("domain grid needs at least 2 cells per side");
  if (!(w.x1 > w.x0) || !(w.y1 > w.y0)) throw std::invalid_argument("empty domain window");
}

bool Domain::is_excluded(cplx z) const {
  return std::any_of(excluded_.begin(), excluded_.end(),
                     [&](const Disk& d) { return std::abs(z - d.center) < d.radius; });
}

bool Domain::admits(cplx z) const { return window_.contains(z) && !is_excluded(z); }

double segment_distance(cplx p, cplx a, cplx b) {
  cplx ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

bool Domain::segment_clear(cplx a, cplx b) const {
  return std::none_of(excluded_.begin(), excluded_.end(),
                      [&](const Disk& d) { return segment_distance(d.center, a, b) < d.radius; });
}

std::size_t Domain::nearest_node(cplx z) const {
  int ci = static_cast<int>(std::lround((z.real() - window_.x0) / hx()));
  int cj = static_cast<int>(std::lround((z.imag() - window_.y0) / hy()));
  std::size_t best = npos;
  double best_d = 0.0;
  for (int r = 0; r <= n_ && best == npos; ++r) {
    for (int j = cj - r; j <= cj + r; ++j) {
      for (int i = ci - r; i <= ci + r; ++i) {
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
        if (i < 0 || j < 0 || i > n_ || j > n_) continue;
        cplx p = node(i, j);
        if (is_excluded(p)) continue;
        double d = std::abs(p - z);
        if (best == npos || d < best_d) {
          best = index(i, j);
          best_d = d;
        }
      }
    }
  }
  return best;
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FLATFRONT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, &errors, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SpanningTree comb_tree(const Domain& d, cplx z0) {
  SpanningTree tree;
  tree.parent.assign(d.node_count(), Domain::npos);
  const int n = d.n();
  // root: nearest admissible node joined to z0 by a clear segment
  std::size_t best = Domain::npos;
  double best_d = 0.0;
  int ci = static_cast<int>(std::lround((z0.real() - d.window().x0) / d.hx()));
  int cj = static_cast<int>(std::lround((z0.imag() - d.window().y0) / d.hy()));
  for (int r = 0; r <= n && best == Domain::npos; ++r) {
    for (int j = std::max(0, cj - r); j <= std::min(n, cj + r); ++j) {
      for (int i = std::max(0, ci - r); i <= std::min(n, ci + r); ++i) {
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
        cplx p = d.node(i, j);
        if (d.is_excluded(p) || !d.segment_clear(z0, p)) continue;
        double dist = std::abs(p - z0);
        if (best == Domain::npos || dist < best_d) {
          best = d.index(i, j);
          best_d = dist;
        }
      }
    }
  }
  tree.root = best;
  if (best == Domain::npos) return tree;
  std::vector<unsigned char> seen(d.node_count(), 0);
  seen[best] = 1;
  const int ri = static_cast<int>(best % static_cast<std::size_t>(n + 1));
  const int rj = static_cast<int>(best / static_cast<std::size_t>(n + 1));

  auto try_edge = [&](int ia, int ja, int ib, int jb) {
    std::size_t a = d.index(ia, ja), b = d.index(ib, jb);
    if (!seen[a] || seen[b]) return false;
    cplx pb = d.node(ib, jb);
    if (d.is_excluded(pb) || !d.segment_clear(d.node(ia, ja), pb)) return false;
    seen[b] = 1;
    tree.parent[b] = a;
    return true;
  };

  // stage 1: the root column
  std::vector<std::vector<std::size_t>> column(2);
  for (int j = rj + 1; j <= n && try_edge(ri, j - 1, ri, j); ++j) column[0].push_back(d.index(ri, j));
  for (int j = rj - 1; j >= 0 && try_edge(ri, j + 1, ri, j); --j) column[1].push_back(d.index(ri, j));
  tree.stages.push_back(std::move(column));

  // stage 2: rows out of the column
  std::vector<std::vector<std::size_t>> rows;
  for (int j = 0; j <= n; ++j) {
    if (!seen[d.index(ri, j)]) continue;
    std::vector<std::size_t> right, left;
    for (int i = ri + 1; i <= n && try_edge(i - 1, j, i, j); ++i) right.push_back(d.index(i, j));
    for (int i = ri - 1; i >= 0 && try_edge(i + 1, j, i, j); --i) left.push_back(d.index(i, j));
    if (!right.empty()) rows.push_back(std::move(right));
    if (!left.empty()) rows.push_back(std::move(left));
  }
  tree.stages.push_back(std::move(rows));

  // repair: breadth-first rounds around obstacles
  std::vector<std::size_t> frontier;
  for (std::size_t idx = 0; idx < d.node_count(); ++idx)
    if (seen[idx]) frontier.push_back(idx);
  const int di[4] = {1, -1, 0, 0};
  const int dj[4] = {0, 0, 1, -1};
  for (;;) {
    std::vector<std::vector<std::size_t>> round;
    std::vector<std::size_t> next;
    for (std::size_t a : frontier) {
      int ia = static_cast<int>(a % static_cast<std::size_t>(n + 1));
      int ja = static_cast<int>(a / static_cast<std::size_t>(n + 1));
      for (int k = 0; k < 4; ++k) {
        int ib = ia + di[k], jb = ja + dj[k];
        if (ib < 0 || jb < 0 || ib > n || jb > n) continue;
        if (try_edge(ia, ja, ib, jb)) {
          round.push_back({d.index(ib, jb)});
          next.push_back(d.index(ib, jb));
        }
      }
    }
    if (round.empty()) break;
    tree.stages.push_back(std::move(round));
    frontier = std::move(next);
  }
  return tree;
}

}  // namespace flatfront
