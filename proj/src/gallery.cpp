#include "flatfront/gallery.hpp"

#include <cmath>
#include <sstream>

namespace flatfront {

namespace {

double param(const Params& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const Params& p, const std::string& key, int fallback) {
  double v = param(p, key, fallback);
  if (v != std::floor(v)) throw GalleryError(key + " must be an integer");
  return static_cast<int>(v);
}

void only(const Params& p, std::initializer_list<const char*> allowed, const std::string& name) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw GalleryError("unknown parameter '" + k + "' for " + name);
  }
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

GaussData gauss(const std::string& g, const std::string& gs, cplx z0) {
  return {MeroFn::parse(g), MeroFn::parse(gs), z0, 0.0};
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"cylinder", "revolution", "peach", "nnoid", "power_pair", "conical_demo"};
}

GalleryEntry make_gallery(const std::string& name, const Params& p) {
  GalleryEntry e;
  e.name = name;
  e.params = p;

  if (name == "cylinder") {
    only(p, {}, name);
    e.data = gauss("z", "1/z", cplx(std::sqrt(2.0), 0.0));
    e.window = {-2, 2, -2, 2};
    e.singular_set = "t = 0: every point; t != 0: empty";
    e.expected = "t != 0: Regular everywhere; t = 0: DegenerateSingular everywhere";
    e.abs_rho = [](cplx, double t) { return std::exp(-2.0 * t); };
    e.sqrt_zeta_c = [](cplx) { return cplx(0.0); };
    e.zeta_s = [](cplx) { return cplx(0.0); };
  } else if (name == "revolution") {
    only(p, {"mu"}, name);
    double mu = param(p, "mu", 2.0);
    if (!std::isfinite(mu) || mu == 1.0) throw GalleryError("revolution needs mu in R \\ {1}");
    e.params["mu"] = mu;
    e.data = gauss("z", num(mu) + "*z", cplx(1.0, 0.0));
    e.window = mu < 0 ? Window{-0.5, 0.5, -0.5, 0.5} : Window{-2, 2, -2, 2};
    e.singular_set = "circle |z| = (e^t |1-mu| / sqrt|mu|)^((1-mu)/(1+mu))";
    e.expected = mu > 0 ? "CuspidalEdge on the singular circle"
                        : (mu < 0 ? "ConeCandidate on the singular circle (image is one point)"
                                  : "horosphere: totally umbilic, evaluators undefined");
    e.abs_rho = [mu](cplx z, double t) {
      return std::exp(-2.0 * t) * std::abs(mu) * std::pow(std::abs(z), 4.0 / (1.0 - mu) - 2.0) / ((1.0 - mu) * (1.0 - mu));
    };
    e.sqrt_zeta_c = [mu](cplx) { return cplx(0.0, 2.0) * (mu + 1.0) / std::sqrt(cplx(mu)); };
    e.zeta_s = [](cplx) { return cplx(0.0); };
    e.singular_radius = [mu](double t) -> std::optional<double> {
      if (mu == -1.0 || mu == 0.0) return std::nullopt;
      return std::pow(std::exp(t) * std::abs(1.0 - mu) / std::sqrt(std::abs(mu)), (1.0 - mu) / (1.0 + mu));
    };
  } else if (name == "peach") {
    only(p, {}, name);
    e.data = gauss("z + 1/2", "z - 1/2", cplx(0.0));
    e.window = {-1, 1, -1, 1};
    e.singular_set = "line Re z = t/2";
    e.expected = "CuspidalEdge along the line; caustic is a horosphere";
    e.abs_rho = [](cplx z, double t) { return std::exp(4.0 * z.real() - 2.0 * t); };
    e.sqrt_zeta_c = [](cplx) { return cplx(0.0, 4.0); };
    e.zeta_s = [](cplx) { return cplx(0.0); };
  } else if (name == "nnoid") {
    only(p, {"n"}, name);
    int n = int_param(p, "n", 3);
    if (n < 3) throw GalleryError("nnoid needs n >= 3");
    e.params["n"] = n;
    e.data = gauss("z", "z^(" + std::to_string(1 - n) + ")", cplx(std::pow(2.0, 1.0 / n), 0.0));
    e.window = {-2.5, 2.5, -2.5, 2.5};
    e.singular_set = "|rho| = e^{2t}; Z0 = {z^n = -1}";
    e.expected = n == 3 ? "6t < log 2: 6 swallowtails; 6t > log 2: 12; 6t = log 2: 3 degenerate points"
                        : (n == 4 ? "2t < log(3/2): 8 swallowtails; 2t > log(3/2): 16; equality: 4 degenerate points"
                                  : "swallowtails and cuspidal edges; degenerate points at z^n = -1");
    double nd = n;
    e.abs_rho = [nd](cplx z, double t) {
      return (nd - 1.0) * std::exp(-2.0 * t) * std::pow(std::abs(z), nd - 2.0) *
             std::pow(std::abs(std::pow(z, nd) - 1.0), (4.0 - 2.0 * nd) / nd);
    };
    e.sqrt_zeta_c = [nd](cplx z) {
      return (nd - 2.0) * (std::pow(z, nd) + 1.0) / (std::sqrt(nd - 1.0) * std::pow(z, nd / 2.0));
    };
    e.zeta_s = [nd](cplx z) {
      cplx zn = std::pow(z, nd);
      return nd * (2.0 - nd) / (2.0 * (nd - 1.0)) * (zn - 1.0) * (zn - 1.0) / zn;
    };
  } else if (name == "power_pair") {
    only(p, {"n", "m"}, name);
    int n = int_param(p, "n", 1), m = int_param(p, "m", 2);
    if (n < 1 || m <= n) throw GalleryError("power_pair needs 1 <= n < m");
    e.params["n"] = n;
    e.params["m"] = m;
    int k = m - n;
    e.data = gauss("z^" + std::to_string(n), "z^" + std::to_string(m), cplx(std::pow(2.0, -1.0 / k), 0.0));
    e.window = {-3, 3, -3, 3};
    e.singular_set = "|rho| = e^{2t}";
    e.expected = (n == 1 && m == 2) ? "e^{2t} < 1/32: 2 swallowtails; = 1/32: 1 degenerate point; above: cuspidal only"
                 : (n == 1 && m == 3) ? "e^{2t} < 3/16: 4 swallowtails; = 3/16: 2 degenerate points; above: cuspidal only"
                                      : "cuspidal edges and swallowtails";
    double nd = n, md = m;
    e.abs_rho = [nd, md](cplx z, double t) {
      return md / nd * std::exp(-2.0 * t) * std::pow(std::abs(z), md + nd) *
             std::pow(std::abs(1.0 - std::pow(z, md - nd)), 2.0 * (md + nd) / (nd - md));
    };
    e.sqrt_zeta_c = [nd, md](cplx z) {
      return cplx(0.0, 1.0) * (md + nd) * (std::pow(z, md) + std::pow(z, nd)) / std::sqrt(md * nd) *
             std::pow(z, -(md + nd) / 2.0);
    };
    e.zeta_s = [nd, md](cplx z) {
      cplx d = std::pow(z, md) - std::pow(z, nd);
      return (md * md - nd * nd) / (2.0 * md * nd) * std::pow(z, -md - nd) * d * d;
    };
  } else if (name == "conical_demo") {
    only(p, {}, name);
    e.data = FormsData{MeroFn::parse("exp(z + (1/3)*z^3)"), MeroFn::parse("exp(-z - (1/3)*z^3)"), cplx(0.0), 0.0};
    e.window = {-1.5, 1.5, -1.5, 1.5};
    e.singular_set = "t = 0: contains the imaginary axis, which lies in Zc and Zs";
    e.expected = "t = 0: ConeCandidate along the imaginary axis";
    e.abs_rho = [](cplx z, double t) {
      cplx phi = z + z * z * z / 3.0;
      return std::exp(-2.0 * phi.real() - 2.0 * t);
    };
    e.sqrt_zeta_c = [](cplx z) { return 2.0 * (1.0 + z * z); };
    e.zeta_s = [](cplx z) { return -4.0 * z; };
  } else {
    throw GalleryError("unknown gallery entry '" + name + "'");
  }
  return e;
}

}  // namespace flatfront
