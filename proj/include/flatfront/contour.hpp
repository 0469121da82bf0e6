#pragma once

// Marching-squares level-set extraction on a Domain grid with per-edge root
// refinement and stitching into maximal polylines.

#include <functional>
#include <vector>

#include "flatfront/domain.hpp"

namespace flatfront {

struct Polyline {
  std::vector<cplx> points;
  bool closed = false;
};

struct ContourOptions {
  /// Exact field used to refine edge crossings and to resolve saddle cells.
  /// When empty the crossing is linearly interpolated from node values.
  std::function<double(cplx)> field;
  int max_root_iterations = 80;
};

struct ContourResult {
  std::vector<Polyline> curves;
  int saddle_cells = 0;  // cells resolved by the centre sample
};

/// Zero set of a field sampled at every node of `d` (NaN marks unusable
/// nodes). Cells touching an excluded disk are skipped, so curves ending
/// there, or at the window edge, come back open.
ContourResult trace_zero_set(const Domain& d, const std::vector<double>& node_values,
                             const ContourOptions& opt = {});

/// Zero set of value(z, r) where r is a square root known only up to sign
/// (no global branch). Node roots may use either sign; inside each cell they
/// are aligned to the first corner, and cells around which the sign does not
/// close up are skipped. `root_at` returns either sign at any point.
ContourResult trace_branch_zero_set(const Domain& d, const std::vector<cplx>& roots,
                                    const std::function<cplx(cplx)>& root_at,
                                    const std::function<double(cplx, cplx)>& value, int max_root_iterations = 80);

/// True if the grid cell with lower-left node (i,j) meets no excluded disk.
bool cell_clear(const Domain& d, int i, int j);

/// Root of f on the segment a->b given opposite-signed endpoint values.
cplx refine_on_segment(const std::function<double(cplx)>& f, cplx a, cplx b, double fa, double fb,
                       int max_iterations = 80);

}  // namespace flatfront
