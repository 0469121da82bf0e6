#include <cmath>
#include <sstream>

#include "doctest.h"
#include "flatfront/generic.hpp"

using namespace flatfront;

namespace {

const Window kGermWindow{-0.5, 0.5, -0.5, 0.5};

SampledMap germ_c(int n = 80) {
  return sample_map([](double u, double v) { return cuspidal_edge_germ(u, v); }, kGermWindow, n);
}

SampledMap germ_s(int n = 80) {
  return sample_map([](double u, double v) { return swallowtail_germ(u, v); }, kGermWindow, n);
}

const NullField& field_near(const GenericReport& r, cplx p) {
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t k = 0; k < r.fields.size(); ++k)
    for (const auto& s : r.fields[k].samples)
      if (std::abs(s.gamma - p) < best_d) best_d = std::abs(s.gamma - p), best = k;
  return r.fields.at(best);
}

}  // namespace

TEST_SUITE("generic") {
  TEST_CASE("germs are fronts with unit normals") {
    // the residual is central-difference truncation error, so it falls like h^2
    for (const SampledMap& m : {germ_c(200), germ_s(200)}) {
      CHECK(front_condition_residual(m) < 1e-4);
      for (const auto& nu : m.normal) CHECK(std::abs(std::hypot(nu[0], nu[1], nu[2]) - 1.0) < 1e-12);
    }
    double coarse = front_condition_residual(germ_s(50)), fine = front_condition_residual(germ_s(100));
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  }

  TEST_CASE("lambda vanishes on the known singular sets") {
    SampledMap mc = germ_c();
    GenericReport rc = analyse(mc);
    REQUIRE(rc.curves.size() == 1);
    for (cplx p : rc.curves[0].points) CHECK(std::abs(p.imag()) < 1e-9);
    // f_S is singular where z = -6 w^2
    SampledMap ms = germ_s();
    GenericReport rs = analyse(ms);
    REQUIRE(rs.curves.size() == 1);
    double h = mc.grid().hx();
    for (cplx p : rs.curves[0].points) CHECK(std::abs(p.real() + 6.0 * p.imag() * p.imag()) < 10.0 * h * h);
  }

  TEST_CASE("type C and type S on the germs") {
    SampledMap mc = germ_c(), ms = germ_s();
    GenericReport rc = analyse(mc), rs = analyse(ms);
    double h = mc.grid().hx();
    for (double z : {-0.3, -0.1, 0.0, 0.2}) CHECK(type_test(field_near(rc, z), z, -1, h).type == GenericType::TypeC);
    CHECK(type_test(field_near(rs, 0.0), 0.0, -1, h).type == GenericType::TypeS);
    for (double w : {-0.2, 0.15}) {
      cplx p(-6.0 * w * w, w);
      CHECK(type_test(field_near(rs, p), p, -1, h).type == GenericType::TypeC);
    }
  }

  TEST_CASE("verdicts survive reversing the curve and swapping coordinates") {
    SampledMap ms = germ_s();
    double h = ms.grid().hx();
    GenericReport rs = analyse(ms);
    Polyline rev = rs.curves[0];
    std::reverse(rev.points.begin(), rev.points.end());
    NullField back = null_directions(ms, rev);
    for (cplx p : {cplx(0.0, 0.0), cplx(-0.06, 0.1), cplx(-0.24, -0.2)}) {
      TypeTestResult a = type_test(rs.fields[0], p, -1, h), b = type_test(back, p, -1, h);
      CHECK(a.type == b.type);
      CHECK(std::abs(std::abs(a.det) - std::abs(b.det)) < 1e-9);
    }
    SampledMap swapped = sample_map([](double u, double v) { return swallowtail_germ(v, u); }, kGermWindow, 80);
    GenericReport rw = analyse(swapped);
    CHECK(type_test(field_near(rw, 0.0), 0.0, -1, h).type == GenericType::TypeS);
    cplx p(0.15, -6.0 * 0.15 * 0.15);
    CHECK(type_test(field_near(rw, p), p, -1, h).type == GenericType::TypeC);
  }

  TEST_CASE("endpoints are unresolved") {
    SampledMap mc = germ_c();
    GenericReport rc = analyse(mc);
    cplx end = rc.curves[0].points.front();
    CHECK(type_test(rc.fields[0], end, -1, mc.grid().hx()).type == GenericType::Unresolved);
  }

  TEST_CASE("a constant map has no kernel direction") {
    SampledMap m = sample_map([](double, double) { return std::pair{Vec3{1, 2, 3}, Vec3{0, 0, 1}}; }, kGermWindow, 10);
    Polyline pl{{cplx(-0.2, 0.0), cplx(0.0, 0.0), cplx(0.2, 0.0)}, false};
    CHECK_THROWS_AS(null_directions(m, pl), RankError);
  }

  TEST_CASE("csv round trip") {
    SampledMap m = germ_s(12);
    std::ostringstream os;
    os.precision(17);
    os << "u,v,fx,fy,fz,nx,ny,nz\n";
    Domain d = m.grid();
    // rows in reverse order
    for (std::size_t k = d.node_count(); k-- > 0;) {
      cplx z = d.node(k);
      os << z.real() << ',' << z.imag();
      for (double x : m.f[k]) os << ',' << x;
      for (double x : m.normal[k]) os << ',' << x;
      os << '\n';
    }
    std::istringstream is(os.str());
    SampledMap back = read_sampled_csv(is);
    CHECK(back.n == m.n);
    CHECK(back.window.x0 == doctest::Approx(m.window.x0));
    CHECK(back.window.y1 == doctest::Approx(m.window.y1));
    for (std::size_t k = 0; k < d.node_count(); ++k) {
      CHECK(back.f[k] == m.f[k]);
      CHECK(back.normal[k] == m.normal[k]);
    }
  }

  TEST_CASE("malformed csv") {
    auto bad = [](const std::string& text) {
      std::istringstream is(text);
      return read_sampled_csv(is);
    };
    CHECK_THROWS_AS(bad(""), std::invalid_argument);
    CHECK_THROWS_AS(bad("0,0,1,2,3,0,0,1\n"), std::invalid_argument);
    std::string rows;
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) rows += std::to_string(i) + "," + std::to_string(j) + ",0,0,0,0,0,1\n";
    CHECK_NOTHROW(bad(rows));
    CHECK_THROWS_AS(bad(rows + "x,1,2\n"), std::invalid_argument);
    CHECK_THROWS_AS(bad(rows.substr(0, rows.rfind("2,2"))), std::invalid_argument);
    std::string rect;
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 3; ++i) rect += std::to_string(i) + "," + std::to_string(j) + ",0,0,0,0,0,1\n";
    CHECK_THROWS_AS(bad(rect), std::invalid_argument);
  }
}
