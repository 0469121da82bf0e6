#pragma once

// Output formats: JSON reports, SVG domain plots and OBJ/PLY meshes.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatfront/caustic.hpp"
#include "flatfront/gallery.hpp"
#include "flatfront/generic.hpp"
#include "flatfront/lift.hpp"
#include "flatfront/singular.hpp"

namespace flatfront {

using json = nlohmann::ordered_json;

json to_json(cplx z);

/// Front definition document:
/// {"gauss": {"G", "Gstar"} | "forms": {"omega", "theta"}, "z0": [re, im], "t": t,
///  "domain": {"window": [x0, x1, y0, y1], "grid": n, "radius": r}}
struct FrontDefinition {
  FrontData data;
  std::optional<Window> window;
  std::optional<int> grid;
  std::optional<double> radius;
};

class DefinitionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

FrontDefinition front_from_json(const json& j);
json front_to_json(const FrontData& f, const std::optional<Window>& w = std::nullopt);
/// Gallery entry as a definition document plus its metadata.
json gallery_json(const GalleryEntry& e);
json to_json(const ClassificationRecord& r);
json to_json(const Thresholds& t);

/// Per-curve classification with the swallowtails found on each curve.
struct ClassifyResult {
  double t = 0.0;
  TraceResult trace;
  std::vector<std::vector<ClassificationRecord>> swallowtails;  // parallel to trace.curves
  std::vector<std::string> notes;
};

ClassifyResult run_classify(const CanonicalEvaluators& ev, double t, const TraceOptions& opt = {});

json classify_json(const ClassifyResult& r);
json sweep_json(const TSweepReport& r);
json caustic_json(const CausticLocus& c);
json generic_json(const GenericReport& g, const std::vector<std::pair<cplx, TypeTestResult>>& tests);

/// Domain picture: window, excluded disks, curves coloured by verdict, swallowtail markers.
std::string domain_svg(const Domain& d, const ClassifyResult& r);

enum class Model { Ball, Halfspace };

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint8_t, 3>> colors;  // per vertex
  std::vector<std::array<std::size_t, 3>> faces;
  std::vector<std::vector<std::size_t>> polylines;  // indices into vertices
};

Vec3 model_coords(const HermPoint& p, Model m);
std::array<std::uint8_t, 3> verdict_color(Verdict v);

/// Triangulated front over the reached grid cells plus singular curves as polylines.
Mesh front_mesh(const LegendrianLift& lift, Model model, const ClassifyResult* singular = nullptr);

/// Caustic surface cosh(r1) f + sinh(r1) nu over the same grid.
Mesh caustic_mesh(const LegendrianLift& lift, const CanonicalEvaluators& ev, Model model);

void write_obj(std::ostream& os, const Mesh& m);
void write_ply(std::ostream& os, const Mesh& m);

/// All face and polyline indices are in range.
bool mesh_indices_valid(const Mesh& m);

}  // namespace flatfront
