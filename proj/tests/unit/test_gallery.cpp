#include <cmath>

#include "doctest.h"
#include "flatfront/gallery.hpp"
#include "flatfront/singular.hpp"
#include "support.hpp"

using namespace flatfront;
using testing_support::random_points;
using testing_support::rel_err;

TEST_SUITE("gallery") {
  TEST_CASE("closed-form oracles agree with the pipeline") {
    std::vector<std::pair<std::string, Params>> cases = {
        {"cylinder", {}},        {"revolution", {{"mu", 2}}},          {"revolution", {{"mu", -2}}},
        {"revolution", {{"mu", 0.5}}}, {"peach", {}},                  {"nnoid", {{"n", 3}}},
        {"nnoid", {{"n", 5}}},   {"power_pair", {{"n", 1}, {"m", 2}}}, {"power_pair", {{"n", 2}, {"m", 5}}},
        {"conical_demo", {}}};
    for (const auto& [name, p] : cases) {
      GalleryEntry e = make_gallery(name, p);
      Domain d = make_domain(e.data, e.window, 64);
      const double t = 0.3;
      CanonicalEvaluators ev(with_t(e.data, t), d);
      SpecialPoints sp = locate_special_points(e.data, e.window);
      std::vector<cplx> avoid = sp.ends;
      avoid.insert(avoid.end(), sp.poles.begin(), sp.poles.end());
      avoid.insert(avoid.end(), sp.umbilics.begin(), sp.umbilics.end());
      double span = e.window.x1 - e.window.x0;
      int checked = 0;
      double worst_rho = 0, worst_zc = 0, worst_zs = 0;
      for (cplx z : random_points(e.window, 300, avoid, 0.05 * span)) {
        if (!d.admits(z) || checked == 100) continue;
        ++checked;
        Invariants inv = invariants_at(ev, z);
        worst_rho = std::max(worst_rho, rel_err(std::exp(ev.log_abs_rho(z)), e.abs_rho(z, t)));
        cplx sq = e.sqrt_zeta_c(z);
        worst_zc = std::max(worst_zc, rel_err(inv.zeta_c, sq * sq));
        worst_zs = std::max(worst_zs, rel_err(inv.zeta_s, e.zeta_s(z)));
      }
      CAPTURE(name);
      CAPTURE(worst_rho);
      CAPTURE(worst_zc);
      CAPTURE(worst_zs);
      CHECK(checked == 100);
      CHECK(worst_rho < 1e-8);
      CHECK(worst_zc < 1e-8);
      CHECK(worst_zs < 1e-8);
    }
  }

  TEST_CASE("conical_demo: the imaginary axis lies in Zc and Zs") {
    GalleryEntry e = make_gallery("conical_demo");
    Domain d = make_domain(e.data, e.window, 64);
    CanonicalEvaluators ev(e.data, d);
    Thresholds tol;
    for (int k = 0; k <= 100; ++k) {
      cplx z(0.0, -1.4 + 2.8 * k / 100.0);
      if (!d.admits(z)) continue;
      Diagnostics dg = diagnostics_at(ev, z, 0.0);
      CHECK(std::abs(dg.im_sqrt_zeta_c) <= 1e-7);
      CHECK(std::abs(dg.re_zeta_s) <= 1e-7);
      CHECK(std::abs(dg.lambda_proxy) <= 1e-7);
      CHECK(decide(dg, tol) == Verdict::ConeCandidate);
    }
    SweepOptions opt;
    opt.probe_between = false;
    TSweepReport rep = sweep_t(ev, opt);
    bool found = false;
    for (const auto& v : rep.values) {
      if (v.kind != "ZcZs") continue;
      found = true;
      for (cplx w : v.witnesses) CHECK(std::abs(w.real()) <= 1e-7);
    }
    CHECK(found);
  }

  TEST_CASE("singular circle radius of the revolution fronts") {
    GalleryEntry e = make_gallery("revolution", {{"mu", 2}});
    for (double t : {-0.2, 0.0, 0.5}) {
      auto r = e.singular_radius(t);
      REQUIRE(r.has_value());
      CHECK(std::abs(e.abs_rho(*r, t) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(make_gallery("nope"), GalleryError);
    CHECK_THROWS_AS(make_gallery("revolution", {{"mu", 1}}), GalleryError);
    CHECK_THROWS_AS(make_gallery("nnoid", {{"n", 2}}), GalleryError);
    CHECK_THROWS_AS(make_gallery("nnoid", {{"n", 3.5}}), GalleryError);
    CHECK_THROWS_AS(make_gallery("power_pair", {{"n", 2}, {"m", 2}}), GalleryError);
    CHECK_THROWS_AS(make_gallery("power_pair", {{"n", 0}, {"m", 2}}), GalleryError);
    CHECK_THROWS_AS(make_gallery("peach", {{"n", 3}}), GalleryError);
    for (const auto& name : gallery_names()) CHECK_NOTHROW(make_gallery(name));
  }
}
