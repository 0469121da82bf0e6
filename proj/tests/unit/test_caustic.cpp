#include <cmath>

#include "doctest.h"
#include "flatfront/caustic.hpp"
#include "flatfront/gallery.hpp"
#include "flatfront/lift.hpp"
#include "flatfront/singular.hpp"
#include "support.hpp"

using namespace flatfront;
using testing_support::random_points;

namespace {

const std::vector<std::pair<std::string, Params>> kGauss = {
    {"peach", {}}, {"nnoid", {{"n", 3}}}, {"revolution", {{"mu", 2}}}, {"power_pair", {{"n", 1}, {"m", 2}}}};

std::vector<cplx> sample_points(const GalleryEntry& e, int count) {
  SpecialPoints sp = locate_special_points(e.data, e.window);
  std::vector<cplx> avoid = sp.ends;
  avoid.insert(avoid.end(), sp.poles.begin(), sp.poles.end());
  avoid.insert(avoid.end(), sp.umbilics.begin(), sp.umbilics.end());
  avoid.push_back(0.0);
  Window w{-1.2, 1.2, -1.2, 1.2};
  return random_points(w, count, avoid, 0.2);
}

}  // namespace

TEST_SUITE("caustic") {
  TEST_CASE("principal curvatures") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 3}});
    Domain d = make_domain(e.data, e.window, 128);
    CanonicalEvaluators ev(e.data, d);
    for (cplx z : sample_points(e, 20)) {
      PrincipalCurvatures pc = principal_curvatures(ev, z);
      if (pc.singular) continue;
      CHECK(pc.kappa1 * pc.kappa2 == doctest::Approx(1.0).epsilon(1e-12));
      double r = std::exp(ev.log_abs_rho(z));
      CHECK(pc.kappa1 == doctest::Approx((r + 1) / (r - 1)).epsilon(1e-10));
    }
    TraceResult tr = trace_singular_curves(ev, 0.0);
    REQUIRE_FALSE(tr.curves.empty());
    for (cplx z : tr.curves[0].points) CHECK(std::abs(principal_curvatures(ev, z).r1) < 1e-9);
  }

  TEST_CASE("closed-form caustic matches the integrated one for every branch seed") {
    for (const auto& [name, p] : kGauss) {
      GalleryEntry e = make_gallery(name, p);
      for (double t : {0.0, 0.4}) {
        FrontData f = with_t(e.data, t);
        Domain d = make_domain(f, e.window, 64);
        LegendrianLift lift(f, d);
        CanonicalEvaluators ev(f, d);
        const auto& g = std::get<GaussData>(f);
        for (cplx z : sample_points(e, 10)) {
          Mat2 ref = caustic_point(lift.evaluate(z).E, ev.log_abs_rho(z)).matrix();
          for (int seed = 0; seed < 4; ++seed) {
            AlphaBranch br(seed);
            Mat2 c = herm_from_lift(lift_gauge(g) * caustic_lift(g, z, br)).matrix();
            CAPTURE(name);
            CHECK((c - ref).norm() < 1e-8 * ref.norm());
          }
          cplx q = 0.0;
          SL2 ec = caustic_lift_from_front(lift.evaluate(z).E, std::exp(ev.log_abs_rho(z)), q);
          CHECK((herm_from_lift(ec).matrix() - ref).norm() < 1e-12 * ref.norm());
        }
      }
    }
  }

  TEST_CASE("parallel members share one caustic") {
    GalleryEntry e = make_gallery("power_pair", {{"n", 1}, {"m", 2}});
    FrontData a = with_t(e.data, -0.3), b = with_t(e.data, 0.5);
    Domain d = make_domain(e.data, e.window, 64);
    LegendrianLift la(a, d), lb(b, d);
    CanonicalEvaluators ea(a, d), eb(b, d);
    for (cplx z : sample_points(e, 30)) {
      Mat2 ca = caustic_point(la.evaluate(z).E, ea.log_abs_rho(z)).matrix();
      Mat2 cb = caustic_point(lb.evaluate(z).E, eb.log_abs_rho(z)).matrix();
      CHECK((ca - cb).norm() < 1e-8 * ca.norm());
    }
  }

  TEST_CASE("caustic forms reproduce the lift's Maurer-Cartan form") {
    const double h = 1e-5;
    for (const auto& [name, p] : kGauss) {
      GalleryEntry e = make_gallery(name, p);
      Domain d = make_domain(e.data, e.window, 32);
      CanonicalEvaluators ev(e.data, d);
      const auto& g = std::get<GaussData>(e.data);
      for (cplx z : sample_points(e, 10)) {
        AlphaBranch br;
        SL2 e0 = caustic_lift(g, z, br);
        AlphaBranch bp = br, bm = br;
        Mat2 m = e0.inverse() * ((1.0 / (2 * h)) * (caustic_lift(g, z + h, bp) - caustic_lift(g, z - h, bm)));
        CanonicalJet j = ev.jet(z);
        double best = 1e300;
        for (double sign : {1.0, -1.0}) {
          CausticForms f = caustic_forms(j, sign * std::sqrt(j.hopf));
          double scale = std::abs(f.omega_c) + std::abs(f.theta_c);
          best = std::min(best, (std::abs(m.b - f.theta_c) + std::abs(m.c - f.omega_c)) / scale);
          CHECK(std::abs(f.omega_c * f.theta_c - caustic_hopf(j)) < 1e-12 * (1.0 + std::abs(caustic_hopf(j))));
        }
        CAPTURE(name);
        CHECK((std::abs(m.a) + std::abs(m.d)) / (std::abs(m.b) + std::abs(m.c)) < 1e-6);
        CHECK(best < 1e-6);
      }
    }
  }

  TEST_CASE("caustic Gauss maps are the column ratios of the caustic lift") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 4}});
    const auto& g = std::get<GaussData>(e.data);
    for (cplx z : sample_points(e, 10)) {
      AlphaBranch a, b;
      SL2 ec = caustic_lift(g, z, a);
      auto [gc, gcs] = caustic_gauss(g, z, b);
      CHECK(std::abs(gc - ec.a / ec.c) < 1e-10 * (1.0 + std::abs(gc)));
      CHECK(std::abs(gcs - ec.b / ec.d) < 1e-10 * (1.0 + std::abs(gcs)));
    }
  }

  TEST_CASE("the peach caustic has no singular points") {
    GalleryEntry e = make_gallery("peach");
    CanonicalEvaluators ev(e.data, make_domain(e.data, e.window, 64));
    CausticLocus c = caustic_singularities(ev);
    CHECK(c.zc_curves.empty());
    CHECK(c.direct_points.empty());
  }

  TEST_CASE("Zc and the direct locus agree for the 3-noid") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 3}});
    CanonicalEvaluators ev(e.data, make_domain(e.data, e.window, 128));
    CausticLocus c = caustic_singularities(ev);
    CHECK_FALSE(c.zc_curves.empty());
    CHECK(c.records.size() > 50);
    CHECK(c.hausdorff < 1e-6);
    for (const auto& r : c.records) CHECK(r.re_zeta_c >= -1e-7);
  }

  TEST_CASE("hausdorff distance") {
    CHECK(hausdorff_distance({0.0, 1.0}, {0.0, 1.0}) == 0.0);
    CHECK(hausdorff_distance({0.0}, {0.0, cplx(0, 2)}) == doctest::Approx(2.0));
  }
}
