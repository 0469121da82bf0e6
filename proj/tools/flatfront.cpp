// flatfront: command-line front end for building flat fronts, classifying
// their singularities, sweeping parallel parameters and exporting meshes.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flatfront/caustic.hpp"
#include "flatfront/gallery.hpp"
#include "flatfront/generic.hpp"
#include "flatfront/lift.hpp"
#include "flatfront/report.hpp"
#include "flatfront/singular.hpp"

using namespace flatfront;

namespace {

enum Exit { kOk = 0, kConfig = 2, kPeriod = 3, kNonConvergence = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string gallery;
  std::vector<std::string> params;
  std::string def;
  std::optional<double> t;
  std::string t_range;
  std::string window;
  std::optional<int> grid;
  std::optional<double> tol;
  std::string out;
  std::string format;
  std::string model = "ball";
  bool caustic = false;
  std::string input;  // generic: sampled grid file
};

std::vector<double> split_numbers(const std::string& s, char sep, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
  }
  return out;
}

Params parse_params(const std::vector<std::string>& raw) {
  Params p;
  for (const auto& group : raw) {
    std::stringstream ss(group);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + kv + "'");
      auto v = split_numbers(kv.substr(eq + 1), ',', "--param value");
      p[kv.substr(0, eq)] = v.at(0);
    }
  }
  return p;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct Setup {
  FrontData data;
  Window window;
  int grid = 512;
  double radius = 1e-2;
  Params params;
};

Setup load_front(const RunConfig& c, int default_grid) {
  if (c.gallery.empty() == c.def.empty()) throw ConfigError("give exactly one of --gallery and --def");
  Setup s;
  s.grid = default_grid;
  if (!c.gallery.empty()) {
    s.params = parse_params(c.params);
    GalleryEntry e = make_gallery(c.gallery, s.params);
    s.params = e.params;
    s.data = e.data;
    s.window = e.window;
  } else {
    if (!c.params.empty()) throw ConfigError("--param applies to --gallery only");
    FrontDefinition d = front_from_json(read_json_file(c.def));
    s.data = d.data;
    s.window = d.window.value_or(Window{});
    if (d.grid) s.grid = *d.grid;
    if (d.radius) s.radius = *d.radius;
  }
  if (!c.window.empty()) {
    auto w = split_numbers(c.window, ',', "--window");
    if (w.size() != 4 || !(w[1] > w[0]) || !(w[3] > w[2])) throw ConfigError("--window expects x0,x1,y0,y1 with x0<x1, y0<y1");
    s.window = {w[0], w[1], w[2], w[3]};
  }
  if (c.grid) {
    if (*c.grid < 2) throw ConfigError("--grid must be at least 2");
    s.grid = *c.grid;
  }
  if (c.t) s.data = with_t(s.data, *c.t);
  return s;
}

json header(const RunConfig& c, const Setup* s) {
  json h = {{"command", c.command}};
  if (!c.gallery.empty()) h["gallery"] = c.gallery;
  if (!c.def.empty()) h["def"] = c.def;
  if (!c.input.empty()) h["input"] = c.input;
  h["param"] = c.params;
  if (c.t) h["t"] = *c.t;
  if (!c.t_range.empty()) h["t_range"] = c.t_range;
  if (!c.window.empty()) h["window"] = c.window;
  if (c.grid) h["grid"] = *c.grid;
  if (c.tol) h["tol"] = *c.tol;
  if (!c.format.empty()) h["format"] = c.format;
  h["model"] = c.model;
  h["caustic"] = c.caustic;
  if (!c.out.empty()) h["out"] = c.out;
  if (s) {
    json params = json::object();
    for (const auto& [k, v] : s->params) params[k] = v;
    h["effective"] = {{"front", front_to_json(s->data, s->window)},
                      {"params", params},
                      {"grid", s->grid},
                      {"radius", s->radius}};
  }
  return h;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string with_extension(const std::string& path, const std::string& ext) {
  std::filesystem::path p(path);
  p.replace_extension(ext);
  return p.string();
}

double base_tol(const RunConfig& c) {
  if (!c.tol) return 1e-7;
  if (!(*c.tol > 0.0)) throw ConfigError("--tol must be positive");
  return *c.tol;
}

Model parse_model(const std::string& m) {
  if (m == "ball") return Model::Ball;
  if (m == "halfspace") return Model::Halfspace;
  throw ConfigError("--model must be ball or halfspace");
}

// -------------------------------------------------------------- commands

int cmd_classify(const RunConfig& c) {
  Setup s = load_front(c, 512);
  std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt != "json" && fmt != "svg") throw ConfigError("classify writes json or svg");
  Domain d = make_domain(s.data, s.window, s.grid, s.radius);
  CanonicalEvaluators ev(s.data, d);
  ClassifyResult r = run_classify(ev, ev.t(), TraceOptions{base_tol(c)});
  std::string svg = domain_svg(d, r);
  if (fmt == "svg") {
    emit(c.out, svg);
    return kOk;
  }
  json doc = {{"config", header(c, &s)}, {"report", classify_json(r)}};
  emit(c.out, doc.dump(1) + "\n");
  if (!c.out.empty() && c.out != "-") emit(with_extension(c.out, ".svg"), svg);
  return kOk;
}

int cmd_sweep(const RunConfig& c) {
  Setup s = load_front(c, 256);
  if (!c.format.empty() && c.format != "json") throw ConfigError("sweep writes json");
  SweepOptions opt;
  if (!c.t_range.empty()) {
    auto v = split_numbers(c.t_range, ':', "--t-range");
    if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2]) || !(v[1] >= v[0]))
      throw ConfigError("--t-range expects a:b:steps with a <= b and integer steps >= 1");
    int steps = static_cast<int>(v[2]);
    for (int k = 0; k <= steps; ++k) opt.probe_t.push_back(v[0] + (v[1] - v[0]) * k / steps);
  }
  Domain d = make_domain(s.data, s.window, s.grid, s.radius);
  CanonicalEvaluators ev(s.data, d);
  TSweepReport r = sweep_t(ev, opt);
  json doc = {{"config", header(c, &s)}, {"report", sweep_json(r)}};
  emit(c.out, doc.dump(1) + "\n");
  return kOk;
}

int cmd_caustic(const RunConfig& c) {
  Setup s = load_front(c, 256);
  std::string fmt = c.format.empty() ? "obj" : c.format;
  if (fmt != "obj" && fmt != "ply" && fmt != "json") throw ConfigError("caustic writes obj, ply or json");
  Domain d = make_domain(s.data, s.window, s.grid, s.radius);
  CanonicalEvaluators ev(s.data, d);
  CausticLocus locus = caustic_singularities(ev, base_tol(c));
  json doc = {{"config", header(c, &s)}, {"report", caustic_json(locus)}};
  if (fmt == "json" || c.out.empty() || c.out == "-") {
    emit(fmt == "json" ? c.out : "", doc.dump(1) + "\n");
    if (fmt == "json") return kOk;
  }
  LegendrianLift lift(s.data, d);
  Mesh m = caustic_mesh(lift, ev, parse_model(c.model));
  std::ostringstream os;
  if (fmt == "ply") write_ply(os, m);
  else write_obj(os, m);
  if (c.out.empty() || c.out == "-") return kOk;  // report already on stdout
  emit(c.out, os.str());
  emit(with_extension(c.out, ".json"), doc.dump(1) + "\n");
  return kOk;
}

int cmd_mesh(const RunConfig& c) {
  Setup s = load_front(c, 128);
  std::string fmt = c.format.empty() ? "obj" : c.format;
  if (fmt != "obj" && fmt != "ply") throw ConfigError("mesh writes obj or ply");
  Model model = parse_model(c.model);
  Domain d = make_domain(s.data, s.window, s.grid, s.radius);
  LegendrianLift lift(s.data, d);
  Mesh m;
  if (c.caustic) {
    CanonicalEvaluators ev(s.data, d);
    m = caustic_mesh(lift, ev, model);
  } else {
    CanonicalEvaluators ev(s.data, d);
    ClassifyResult r = run_classify(ev, ev.t(), TraceOptions{base_tol(c)});
    m = front_mesh(lift, model, &r);
  }
  std::ostringstream os;
  if (fmt == "ply") write_ply(os, m);
  else write_obj(os, m);
  emit(c.out, os.str());
  return kOk;
}

SampledMap sampled_from_json(const json& j) {
  try {
    SampledMap m;
    auto w = j.at("window");
    if (!w.is_array() || w.size() != 4) throw ConfigError("window must be [u0, u1, v0, v1]");
    m.window = {w[0].get<double>(), w[1].get<double>(), w[2].get<double>(), w[3].get<double>()};
    m.n = j.at("n").get<int>();
    if (m.n < 4) throw ConfigError("n must be at least 4");
    std::size_t count = static_cast<std::size_t>(m.n + 1) * static_cast<std::size_t>(m.n + 1);
    for (const char* key : {"f", "normal"}) {
      const json& a = j.at(key);
      if (!a.is_array() || a.size() != count)
        throw ConfigError(std::string(key) + " must hold (n+1)^2 = " + std::to_string(count) + " triples");
      auto& dst = std::string(key) == "f" ? m.f : m.normal;
      for (const auto& v : a) dst.push_back({v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sampled grid: ") + e.what());
  }
}

int cmd_generic(const RunConfig& c) {
  if (c.input.empty()) throw ConfigError("generic needs a sampled grid file");
  if (!c.format.empty() && c.format != "json") throw ConfigError("generic writes json");
  const bool csv = std::filesystem::path(c.input).extension() == ".csv";
  json in = csv ? json::object() : read_json_file(c.input);
  SampledMap m;
  if (csv) {
    std::ifstream f(c.input);
    if (!f) throw ConfigError("cannot open " + c.input);
    try {
      m = read_sampled_csv(f);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("malformed sampled grid: ") + e.what());
    }
  } else {
    m = sampled_from_json(in);
  }
  GenericReport rep = analyse(m);
  double h = std::max(m.grid().hx(), m.grid().hy());
  std::vector<std::pair<cplx, TypeTestResult>> tests;
  auto test_at = [&](cplx p) {
    for (std::size_t k = 0; k < rep.fields.size(); ++k) {
      const auto& f = rep.fields[k];
      double best = 1e300;
      for (const auto& s : f.samples) best = std::min(best, std::abs(s.gamma - p));
      if (best <= 2.0 * h) {
        tests.emplace_back(p, type_test(f, p, c.tol.value_or(-1.0), h));
        return;
      }
    }
    TypeTestResult none;
    none.type = GenericType::Unresolved;
    tests.emplace_back(p, none);
  };
  if (in.contains("points")) {
    for (const auto& p : in["points"]) test_at({p.at(0).get<double>(), p.at(1).get<double>()});
  } else {
    for (const auto& f : rep.fields)
      for (std::size_t k = 0; k < f.samples.size(); k += 8) test_at(f.samples[k].gamma);
  }
  json doc = {{"config", header(c, nullptr)}, {"report", generic_json(rep, tests)}};
  emit(c.out, doc.dump(1) + "\n");
  return kOk;
}

void add_front_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--gallery", c.gallery, "built-in example name");
  sub->add_option("--param", c.params, "gallery parameters, key=value[,key=value]");
  sub->add_option("--def", c.def, "front definition file (JSON)");
  sub->add_option("--t", c.t, "parallel parameter");
  sub->add_option("--window", c.window, "domain window x0,x1,y0,y1");
  sub->add_option("--grid", c.grid, "grid cells per side");
  sub->add_option("--tol", c.tol, "zero threshold factor");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--format", c.format, "obj|ply|svg|json");
  sub->add_option("--model", c.model, "ball|halfspace");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat fronts in hyperbolic 3-space: singularities, parallel families, caustics"};
  app.require_subcommand(1);
  RunConfig c;

  auto* classify = app.add_subcommand("classify", "trace and classify the singular set of f_t");
  add_front_options(classify, c);
  auto* sweep = app.add_subcommand("sweep", "find exceptional parallel parameters");
  add_front_options(sweep, c);
  sweep->add_option("--t-range", c.t_range, "extra summaries at a:b:steps");
  auto* caustic = app.add_subcommand("caustic", "caustic mesh and its singular locus");
  add_front_options(caustic, c);
  auto* mesh = app.add_subcommand("mesh", "export the front as OBJ or PLY");
  add_front_options(mesh, c);
  mesh->add_flag("--caustic", c.caustic, "mesh the caustic instead of the front");
  auto* generic = app.add_subcommand("generic", "type C / type S test on a sampled grid");
  generic->add_option("input", c.input, "sampled grid: JSON, or CSV rows u,v,fx,fy,fz,nx,ny,nz")->required();
  generic->add_option("--tol", c.tol, "zero threshold for det and its derivative");
  generic->add_option("--out", c.out, "output path (default stdout)");
  generic->add_option("--format", c.format, "json");
  auto* gallery = app.add_subcommand("gallery", "built-in examples");
  gallery->require_subcommand(1);
  auto* glist = gallery->add_subcommand("list", "names of the built-in examples");
  std::string show_name;
  auto* gshow = gallery->add_subcommand("show", "definition JSON of one example");
  gshow->add_option("name", show_name)->required();
  gshow->add_option("--param", c.params, "parameters, key=value[,key=value]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*classify) return c.command = "classify", cmd_classify(c);
    if (*sweep) return c.command = "sweep", cmd_sweep(c);
    if (*caustic) return c.command = "caustic", cmd_caustic(c);
    if (*mesh) return c.command = "mesh", cmd_mesh(c);
    if (*generic) return c.command = "generic", cmd_generic(c);
    if (*glist) {
      json names = gallery_names();
      std::cout << names.dump(1) << "\n";
      return kOk;
    }
    if (*gshow) {
      std::cout << gallery_json(make_gallery(show_name, parse_params(c.params))).dump(1) << "\n";
      return kOk;
    }
  } catch (const PeriodViolation& e) {
    std::cerr << "period condition failed: " << e.what() << " (period " << e.period().real() << (e.period().imag() < 0 ? "" : "+")
              << e.period().imag() << "i)\n";
    return kPeriod;
  } catch (const NonConvergence& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const RankError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const GalleryError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DefinitionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const expr::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}
