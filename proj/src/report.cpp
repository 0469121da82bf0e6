#include "flatfront/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace flatfront {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {

cplx complex_from(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DefinitionError(std::string(what) + " must be a number or [re, im]");
}

std::string string_field(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_string()) throw DefinitionError(std::string("missing string field '") + key + "'");
  return obj[key].get<std::string>();
}

MeroFn parse_fn(const json& obj, const char* key) {
  std::string text = string_field(obj, key);
  try {
    return MeroFn::parse(text);
  } catch (const expr::ParseError& e) {
    throw DefinitionError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

FrontDefinition front_from_json(const json& j) {
  if (!j.is_object()) throw DefinitionError("definition must be a JSON object");
  if (j.contains("gauss") == j.contains("forms")) throw DefinitionError("give exactly one of 'gauss' and 'forms'");
  cplx z0 = j.contains("z0") ? complex_from(j["z0"], "z0") : cplx(0.0);
  double t = 0.0;
  if (j.contains("t")) {
    if (!j["t"].is_number()) throw DefinitionError("t must be a number");
    t = j["t"].get<double>();
  }
  FrontDefinition def;
  if (j.contains("gauss")) {
    const json& g = j["gauss"];
    def.data = GaussData{parse_fn(g, "G"), parse_fn(g, "Gstar"), z0, t};
  } else {
    const json& f = j["forms"];
    def.data = FormsData{parse_fn(f, "omega"), parse_fn(f, "theta"), z0, t};
  }
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) throw DefinitionError("domain must be an object");
    if (d.contains("window")) {
      const json& w = d["window"];
      if (!w.is_array() || w.size() != 4) throw DefinitionError("domain.window must be [x0, x1, y0, y1]");
      Window win{w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
      if (!(win.x1 > win.x0) || !(win.y1 > win.y0)) throw DefinitionError("domain.window is empty");
      def.window = win;
    }
    if (d.contains("grid")) {
      if (!d["grid"].is_number_integer() || d["grid"].get<int>() < 2) throw DefinitionError("domain.grid must be an integer >= 2");
      def.grid = d["grid"].get<int>();
    }
    if (d.contains("radius")) {
      if (!d["radius"].is_number() || !(d["radius"].get<double>() > 0.0)) throw DefinitionError("domain.radius must be positive");
      def.radius = d["radius"].get<double>();
    }
  }
  return def;
}

json front_to_json(const FrontData& f, const std::optional<Window>& w) {
  json j = json::object();
  if (const auto* g = std::get_if<GaussData>(&f)) {
    j["gauss"] = {{"G", g->G.text()}, {"Gstar", g->Gstar.text()}};
  } else {
    const auto& fm = std::get<FormsData>(f);
    j["forms"] = {{"omega", fm.omega.text()}, {"theta", fm.theta.text()}};
  }
  j["z0"] = to_json(base_point(f));
  j["t"] = parallel_t(f);
  if (w) j["domain"] = {{"window", {w->x0, w->x1, w->y0, w->y1}}};
  return j;
}

json gallery_json(const GalleryEntry& e) {
  json j = {{"name", e.name}};
  json p = json::object();
  for (const auto& [k, v] : e.params) p[k] = v;
  j["params"] = p;
  json def = front_to_json(e.data, e.window);
  for (auto& [k, v] : def.items()) j[k] = v;
  j["singular_set"] = e.singular_set;
  j["expected"] = e.expected;
  return j;
}

json to_json(const Thresholds& t) {
  return json{{"singular", t.singular}, {"xi", t.xi}, {"im_sqrt_zeta_c", t.im_sqrt_zeta_c}, {"re_zeta_s", t.re_zeta_s}};
}

json to_json(const ClassificationRecord& r) {
  return json{{"z", to_json(r.z)},
              {"verdict", to_string(r.verdict)},
              {"diagnostics",
               {{"logrho", r.diag.lambda_proxy},
                {"xi_abs", r.diag.xi_abs},
                {"im_sqrt_zeta_c", r.diag.im_sqrt_zeta_c},
                {"re_zeta_s", r.diag.re_zeta_s}}}};
}

ClassifyResult run_classify(const CanonicalEvaluators& ev, double t, const TraceOptions& opt) {
  ClassifyResult r;
  r.t = t;
  r.trace = trace_singular_curves(ev, t, opt);
  for (const auto& c : r.trace.curves) {
    try {
      r.swallowtails.push_back(enumerate_swallowtails(ev, c, t));
    } catch (const BranchJump& e) {
      r.swallowtails.emplace_back();
      r.notes.push_back(e.what());
    }
  }
  return r;
}

json classify_json(const ClassifyResult& r) {
  json curves = json::array();
  int total_sw = 0;
  std::map<std::string, int> counts;
  for (std::size_t k = 0; k < r.trace.curves.size(); ++k) {
    const SingularCurve& c = r.trace.curves[k];
    json recs = json::array();
    for (const auto& rec : c.records) {
      recs.push_back(to_json(rec));
      ++counts[to_string(rec.verdict)];
    }
    json sw = json::array();
    for (const auto& rec : r.swallowtails[k]) {
      if (rec.verdict == Verdict::Swallowtail) ++total_sw;
      sw.push_back(to_json(rec));
    }
    curves.push_back(json{{"closed", c.closed}, {"thresholds", to_json(c.tol)}, {"samples", recs}, {"swallowtails", sw}});
  }
  json cj = json::object();
  for (const auto& [k, v] : counts) cj[k] = v;
  return json{{"t", r.t},
              {"curve_count", r.trace.curves.size()},
              {"saddle_cells", r.trace.saddle_cells},
              {"swallowtail_count", total_sw},
              {"verdict_counts", cj},
              {"notes", r.notes},
              {"curves", curves}};
}

json sweep_json(const TSweepReport& r) {
  json values = json::array();
  for (const auto& v : r.values) {
    json w = json::array();
    for (cplx z : v.witnesses) w.push_back(to_json(z));
    values.push_back(json{{"e2t", v.e2t},
                          {"t", v.t},
                          {"kind", v.kind},
                          {"whole_domain", v.whole_domain},
                          {"xi_abs", v.xi_abs},
                          {"im_sqrt_zeta_c", v.im_sqrt_zeta_c},
                          {"re_zeta_s", v.re_zeta_s},
                          {"witnesses", w}});
  }
  json continua = json::array();
  for (const auto& c : r.continua)
    continua.push_back(json{{"kind", c.kind}, {"e2t_min", c.e2t_min}, {"e2t_max", c.e2t_max}, {"note", c.note}});
  json unresolved = json::array();
  for (const auto& u : r.unresolved)
    unresolved.push_back(json{{"z", to_json(u.z)}, {"kind", u.kind}, {"residual", u.residual}});
  json intervals = json::array();
  for (const auto& s : r.intervals) {
    json counts = json::object();
    for (const auto& [v, n] : s.counts) counts[to_string(v)] = n;
    intervals.push_back(json{{"t", s.t}, {"curves", s.curves}, {"swallowtails", s.swallowtails}, {"verdict_counts", counts}});
  }
  return json{{"exceptional", values}, {"continua", continua}, {"unresolved", unresolved}, {"intervals", intervals}};
}

json caustic_json(const CausticLocus& c) {
  json curves = json::array();
  for (const auto& pl : c.zc_curves) {
    json pts = json::array();
    for (cplx z : pl.points) pts.push_back(to_json(z));
    curves.push_back(json{{"closed", pl.closed}, {"points", pts}});
  }
  json direct = json::array();
  for (cplx z : c.direct_points) direct.push_back(to_json(z));
  json recs = json::array();
  std::map<std::string, int> counts;
  for (const auto& r : c.records) {
    ++counts[to_string(r.from_invariants)];
    recs.push_back(json{{"z", to_json(r.z)},
                        {"verdict", to_string(r.from_invariants)},
                        {"verdict_from_forms", to_string(r.from_forms)},
                        {"re_zeta_c", r.re_zeta_c},
                        {"re_zeta_s", r.re_zeta_s},
                        {"schwarz_diff_abs", r.schwarz_diff_abs}});
  }
  json cj = json::object();
  for (const auto& [k, v] : counts) cj[k] = v;
  return json{{"hausdorff", c.hausdorff},
              {"verdict_counts", cj},
              {"zc_curves", curves},
              {"direct_points", direct},
              {"records", recs}};
}

json generic_json(const GenericReport& g, const std::vector<std::pair<cplx, TypeTestResult>>& tests) {
  json curves = json::array();
  for (std::size_t k = 0; k < g.curves.size(); ++k) {
    json samples = json::array();
    for (const auto& s : g.fields[k].samples)
      samples.push_back(json{{"gamma", to_json(s.gamma)}, {"eta", to_json(s.eta)}, {"det", s.det}, {"residual", s.residual}});
    curves.push_back(json{{"closed", g.curves[k].closed}, {"samples", samples}});
  }
  json tj = json::array();
  for (const auto& [p, r] : tests)
    tj.push_back(json{{"p", to_json(p)},
                      {"at", to_json(r.at)},
                      {"type", to_string(r.type)},
                      {"det", r.det},
                      {"det_derivative", r.det_derivative},
                      {"tol", r.tol}});
  return json{{"curves", curves}, {"tests", tj}};
}

// ------------------------------------------------------------------- SVG

namespace {

const char* verdict_hex(Verdict v) {
  switch (v) {
    case Verdict::Regular: return "#888888";
    case Verdict::CuspidalEdge: return "#1f77b4";
    case Verdict::Swallowtail: return "#d62728";
    case Verdict::DegenerateSingular: return "#9467bd";
    case Verdict::ConeCandidate: return "#ff7f0e";
    case Verdict::Unresolved: return "#444444";
  }
  return "#444444";
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string domain_svg(const Domain& d, const ClassifyResult& r) {
  const Window& w = d.window();
  const double size = 800.0;
  double sx = size / (w.x1 - w.x0), sy = size / (w.y1 - w.y0);
  double s = std::min(sx, sy);
  double width = (w.x1 - w.x0) * s, height = (w.y1 - w.y0) * s;
  auto X = [&](cplx z) { return fmt_num((z.real() - w.x0) * s); };
  auto Y = [&](cplx z) { return fmt_num((w.y1 - z.imag()) * s); };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_num(width) + "\" height=\"" + fmt_num(height) +
         "\" viewBox=\"0 0 " + fmt_num(width) + " " + fmt_num(height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt_num(width) + "\" height=\"" + fmt_num(height) +
         "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const Disk& k : d.excluded()) {
    out += "<circle cx=\"" + X(k.center) + "\" cy=\"" + Y(k.center) + "\" r=\"" + fmt_num(std::max(k.radius * s, 2.0)) +
           "\" fill=\"#dddddd\" stroke=\"#999999\"><title>" + k.reason + "</title></circle>\n";
  }
  for (const auto& c : r.trace.curves) {
    const std::size_t n = c.points.size();
    std::size_t segs = c.closed ? n : (n == 0 ? 0 : n - 1);
    for (std::size_t k = 0; k < segs; ++k) {
      cplx a = c.points[k], b = c.points[(k + 1) % n];
      Verdict v = k < c.records.size() ? c.records[k].verdict : Verdict::Unresolved;
      out += "<line x1=\"" + X(a) + "\" y1=\"" + Y(a) + "\" x2=\"" + X(b) + "\" y2=\"" + Y(b) + "\" stroke=\"" +
             verdict_hex(v) + "\" stroke-width=\"2\"/>\n";
    }
  }
  for (const auto& sw : r.swallowtails)
    for (const auto& rec : sw)
      out += "<circle cx=\"" + X(rec.z) + "\" cy=\"" + Y(rec.z) + "\" r=\"5\" fill=\"none\" stroke=\"" +
             verdict_hex(rec.verdict) + "\" stroke-width=\"2\"/>\n";
  out += "</svg>\n";
  return out;
}

// ----------------------------------------------------------------- meshes

Vec3 model_coords(const HermPoint& p, Model m) { return m == Model::Ball ? to_ball(p) : to_halfspace(p); }

std::array<std::uint8_t, 3> verdict_color(Verdict v) {
  switch (v) {
    case Verdict::Regular: return {200, 200, 200};
    case Verdict::CuspidalEdge: return {31, 119, 180};
    case Verdict::Swallowtail: return {214, 39, 40};
    case Verdict::DegenerateSingular: return {148, 103, 189};
    case Verdict::ConeCandidate: return {255, 127, 14};
    case Verdict::Unresolved: return {68, 68, 68};
  }
  return {68, 68, 68};
}

namespace {

template <class PointOf>
Mesh grid_mesh(const LegendrianLift& lift, PointOf point_of) {
  const Domain& d = lift.domain();
  const int n = d.n();
  Mesh m;
  std::vector<std::size_t> vid(d.node_count(), Domain::npos);
  for (std::size_t idx = 0; idx < d.node_count(); ++idx) {
    if (!lift.reached(idx)) continue;
    vid[idx] = m.vertices.size();
    m.vertices.push_back(point_of(idx));
    m.colors.push_back(verdict_color(Verdict::Regular));
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!cell_clear(d, i, j)) continue;
      std::size_t a = vid[d.index(i, j)], b = vid[d.index(i + 1, j)], c = vid[d.index(i + 1, j + 1)],
                  e = vid[d.index(i, j + 1)];
      if (a == Domain::npos || b == Domain::npos || c == Domain::npos || e == Domain::npos) continue;
      m.faces.push_back({a, b, c});
      m.faces.push_back({a, c, e});
    }
  return m;
}

bool finite3(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

}  // namespace

Mesh front_mesh(const LegendrianLift& lift, Model model, const ClassifyResult* singular) {
  Mesh m = grid_mesh(lift, [&](std::size_t idx) { return model_coords(herm_from_lift(lift.node_state(idx).E), model); });
  if (singular) {
    for (const auto& c : singular->trace.curves) {
      std::vector<std::size_t> line;
      for (std::size_t k = 0; k < c.points.size(); ++k) {
        Vec3 p = model_coords(herm_from_lift(lift.evaluate(c.points[k]).E), model);
        if (!finite3(p)) continue;
        line.push_back(m.vertices.size());
        m.vertices.push_back(p);
        m.colors.push_back(verdict_color(k < c.records.size() ? c.records[k].verdict : Verdict::Unresolved));
      }
      if (c.closed && !line.empty()) line.push_back(line.front());
      if (line.size() >= 2) m.polylines.push_back(std::move(line));
    }
  }
  return m;
}

Mesh caustic_mesh(const LegendrianLift& lift, const CanonicalEvaluators& ev, Model model) {
  const Domain& d = lift.domain();
  return grid_mesh(lift, [&](std::size_t idx) {
    double lr = ev.log_abs_rho(d.node(idx));
    return model_coords(caustic_point(lift.node_state(idx).E, lr), model);
  });
}

bool mesh_indices_valid(const Mesh& m) {
  const std::size_t n = m.vertices.size();
  if (m.colors.size() != n) return false;
  for (const auto& f : m.faces)
    for (std::size_t i : f)
      if (i >= n) return false;
  for (const auto& l : m.polylines)
    for (std::size_t i : l)
      if (i >= n) return false;
  return true;
}

void write_obj(std::ostream& os, const Mesh& m) {
  char buf[128];
  os << "o front\n";
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
    os << buf;
  }
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  for (std::size_t k = 0; k < m.polylines.size(); ++k) {
    os << "o singular_" << k << "\nl";
    for (std::size_t i : m.polylines[k]) os << ' ' << i + 1;
    os << '\n';
  }
}

void write_ply(std::ostream& os, const Mesh& m) {
  std::size_t edges = 0;
  for (const auto& l : m.polylines) edges += l.size() - 1;
  os << "ply\nformat ascii 1.0\n";
  os << "element vertex " << m.vertices.size() << "\n";
  os << "property float x\nproperty float y\nproperty float z\n";
  os << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  os << "element face " << m.faces.size() << "\nproperty list uchar int vertex_indices\n";
  os << "element edge " << edges << "\nproperty int vertex1\nproperty int vertex2\n";
  os << "end_header\n";
  char buf[160];
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const auto& v = m.vertices[i];
    const auto& c = m.colors[i];
    std::snprintf(buf, sizeof buf, "%.9g %.9g %.9g %d %d %d\n", v[0], v[1], v[2], c[0], c[1], c[2]);
    os << buf;
  }
  for (const auto& f : m.faces) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  for (const auto& l : m.polylines)
    for (std::size_t k = 0; k + 1 < l.size(); ++k) os << l[k] << ' ' << l[k + 1] << '\n';
}

}  // namespace flatfront
