#include <cmath>
#include <sstream>

#include "doctest.h"
#include "flatfront/report.hpp"

using namespace flatfront;

TEST_SUITE("report") {
  TEST_CASE("identical runs give byte-identical JSON") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 3}});
    auto run = [&] {
      CanonicalEvaluators ev(e.data, make_domain(e.data, e.window, 128));
      SweepOptions so;
      so.probe_between = false;
      return classify_json(run_classify(ev, 0.0)).dump() + sweep_json(sweep_t(ev, so)).dump() +
             caustic_json(caustic_singularities(ev)).dump();
    };
    CHECK(run() == run());
  }

  TEST_CASE("definition documents round trip") {
    json doc = json::parse(R"j({"gauss": {"G": "z", "Gstar": "z^(-2)"}, "z0": [1.2, 0.1], "t": 0.25,
                               "domain": {"window": [-2, 2, -1, 1], "grid": 64, "radius": 0.02}})j");
    FrontDefinition def = front_from_json(doc);
    CHECK(parallel_t(def.data) == 0.25);
    CHECK(base_point(def.data) == cplx(1.2, 0.1));
    REQUIRE(def.window.has_value());
    CHECK(def.window->y0 == -1.0);
    CHECK(*def.grid == 64);
    FrontDefinition again = front_from_json(front_to_json(def.data, def.window));
    const auto& g1 = std::get<GaussData>(def.data);
    const auto& g2 = std::get<GaussData>(again.data);
    cplx z(0.3, 0.7);
    CHECK(g1.Gstar(z) == g2.Gstar(z));
    CHECK(g2.z0 == g1.z0);
    CHECK(g2.t == g1.t);
  }

  TEST_CASE("malformed definitions") {
    for (const char* bad : {R"([])", R"({})", R"({"gauss": {"G": "z", "Gstar": "1/z"}, "forms": {}})",
                            R"({"gauss": {"G": "z +", "Gstar": "1/z"}})", R"({"gauss": {"G": "z"}})",
                            R"({"gauss": {"G": "z", "Gstar": "1/z"}, "domain": {"window": [1, 0, 0, 1]}})",
                            R"({"gauss": {"G": "z", "Gstar": "1/z"}, "domain": {"grid": 1}})",
                            R"({"gauss": {"G": "z", "Gstar": "1/z"}, "t": "x"})"}) {
      CAPTURE(bad);
      CHECK_THROWS(front_from_json(json::parse(bad)));
    }
  }

  TEST_CASE("meshes index valid vertices inside the ball") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 3}});
    Domain d = make_domain(e.data, e.window, 48);
    LegendrianLift lift(e.data, d);
    CanonicalEvaluators ev(e.data, d);
    ClassifyResult cr = run_classify(ev, 0.0);
    Mesh m = front_mesh(lift, Model::Ball, &cr);
    CHECK(mesh_indices_valid(m));
    CHECK(m.faces.size() > 1000);
    CHECK(m.polylines.size() == cr.trace.curves.size());
    CHECK(m.colors.size() == m.vertices.size());
    std::ostringstream obj;
    write_obj(obj, m);
    std::istringstream in(obj.str());
    std::string line;
    std::size_t vertices = 0, faces = 0;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string tag;
      ls >> tag;
      if (tag == "v") {
        double x, y, z;
        ls >> x >> y >> z;
        CHECK(x * x + y * y + z * z < 1.0);
        ++vertices;
      } else if (tag == "f") {
        ++faces;
      }
    }
    CHECK(vertices == m.vertices.size());
    CHECK(faces == m.faces.size());

    Mesh c = caustic_mesh(lift, ev, Model::Halfspace);
    CHECK(mesh_indices_valid(c));
    for (const auto& v : c.vertices) CHECK(v[2] > 0.0);
    std::ostringstream ply;
    write_ply(ply, c);
    CHECK(ply.str().rfind("ply\nformat ascii 1.0\n", 0) == 0);
    CHECK(ply.str().find("element vertex " + std::to_string(c.vertices.size())) != std::string::npos);

    Mesh broken = m;
    broken.faces.push_back({0, 1, m.vertices.size()});
    CHECK_FALSE(mesh_indices_valid(broken));
  }

  TEST_CASE("svg domain plot") {
    GalleryEntry e = make_gallery("nnoid", {{"n", 3}});
    Domain d = make_domain(e.data, e.window, 128);
    CanonicalEvaluators ev(e.data, d);
    std::string svg = domain_svg(d, run_classify(ev, 0.0));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<circle") != std::string::npos);
  }
}
