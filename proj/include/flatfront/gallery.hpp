#pragma once

// Built-in example fronts with closed-form reference formulas.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatfront/front.hpp"

namespace flatfront {

class GalleryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Params = std::map<std::string, double>;

struct GalleryEntry {
  std::string name;
  Params params;
  FrontData data;
  Window window;  // suggested domain window
  std::string singular_set;  // description of the singular set
  std::string expected;      // expected verdicts by t-range

  // reference formulas; empty when not available
  std::function<double(cplx, double)> abs_rho;  // |rho_t(z)|
  std::function<cplx(cplx)> sqrt_zeta_c;        // up to sign
  std::function<cplx(cplx)> zeta_s;
  std::function<std::optional<double>(double)> singular_radius;  // circle radius of Sigma_t
};

std::vector<std::string> gallery_names();

/// Throws GalleryError for unknown names or parameters out of range.
GalleryEntry make_gallery(const std::string& name, const Params& params = {});

}  // namespace flatfront
