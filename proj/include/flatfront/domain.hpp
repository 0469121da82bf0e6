#pragma once

// Rectangular parameter windows with excluded disks, plus the small
// threading helper shared by the grid-based algorithms.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace flatfront {

using cplx = std::complex<double>;

struct Disk {
  cplx center;
  double radius = 0.0;
  std::string reason;  // "end", "umbilic", "pole", "branch"
};

struct Window {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  bool contains(cplx z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
};

/// Grid of (n+1) x (n+1) nodes over a window, minus excluded disks.
class Domain {
 public:
  Domain() = default;
  Domain(Window w, int n, std::vector<Disk> excluded = {});

  const Window& window() const { return window_; }
  int n() const { return n_; }
  int nodes_per_side() const { return n_ + 1; }
  std::size_t node_count() const {
    return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(n_ + 1);
  }
  double hx() const { return (window_.x1 - window_.x0) / n_; }
  double hy() const { return (window_.y1 - window_.y0) / n_; }

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(i);
  }
  cplx node(int i, int j) const { return {window_.x0 + i * hx(), window_.y0 + j * hy()}; }
  cplx node(std::size_t idx) const {
    int w = n_ + 1;
    return node(static_cast<int>(idx % static_cast<std::size_t>(w)), static_cast<int>(idx / static_cast<std::size_t>(w)));
  }

  const std::vector<Disk>& excluded() const { return excluded_; }
  void add_exclusion(Disk d) { excluded_.push_back(std::move(d)); }

  /// True if z lies in the window and outside every excluded disk.
  bool admits(cplx z) const;
  bool is_excluded(cplx z) const;
  /// The straight segment a->b stays clear of every excluded disk.
  bool segment_clear(cplx a, cplx b) const;
  /// Index of the admissible node nearest to z, or npos.
  std::size_t nearest_node(cplx z) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Window window_{};
  int n_ = 1;
  std::vector<Disk> excluded_;
};

/// Distance from point p to segment [a,b].
double segment_distance(cplx p, cplx a, cplx b);

/// Worker count: FLATFRONT_THREADS if set, else hardware concurrency.
unsigned worker_count();

/// Runs body(begin,end) over [0,n) split into contiguous chunks.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

/// Spanning tree of grid edges rooted at the admissible node nearest z0.
/// Nodes are grouped into stages; within a stage every chain depends only on
/// earlier stages, so chains of one stage can be filled concurrently.
struct SpanningTree {
  std::size_t root = Domain::npos;
  std::vector<std::size_t> parent;  // npos for the root and for unreached nodes
  std::vector<std::vector<std::vector<std::size_t>>> stages;
};

SpanningTree comb_tree(const Domain& d, cplx z0);

/// Propagates values from z0 along the tree: value(b) = step(value(a), a, b).
/// Returns false in `reached` for nodes the tree does not cover.
template <class T, class Step>
void fill_tree(const Domain& d, const SpanningTree& tree, cplx z0, const T& at_z0, Step step,
               std::vector<T>& values, std::vector<unsigned char>& reached) {
  values.assign(d.node_count(), T{});
  reached.assign(d.node_count(), 0);
  if (tree.root == Domain::npos) return;
  values[tree.root] = step(at_z0, z0, d.node(tree.root));
  reached[tree.root] = 1;
  for (const auto& stage : tree.stages) {
    parallel_for(stage.size(), [&](std::size_t begin, std::size_t end) {
      for (std::size_t c = begin; c < end; ++c) {
        for (std::size_t idx : stage[c]) {
          std::size_t p = tree.parent[idx];
          values[idx] = step(values[p], d.node(p), d.node(idx));
          reached[idx] = 1;
        }
      }
    });
  }
}

}  // namespace flatfront
