#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>

#include "catch_amalgamated.hpp"

#include "mixbraid/geometry.hpp"

using namespace mixbraid;

namespace {

  // Every undirected edge is used by exactly two triangles, once in each
  // direction.
  bool closed_and_oriented(TriangulatedSurface const& s) {
    std::map<std::pair<std::size_t, std::size_t>, int> forward, backward;
    for (auto const& t : s.triangles) {
      for (int k = 0; k < 3; ++k) {
        auto a = t.corners[k].vertex, b = t.corners[(k + 1) % 3].vertex;
        if (a < b) {
          ++forward[{a, b}];
        } else {
          ++backward[{b, a}];
        }
      }
    }
    if (forward.size() != s.edges.size()) {
      return false;
    }
    for (auto const& [e, k] : forward) {
      if (k != 1 || backward[e] != 1) {
        return false;
      }
    }
    return backward.size() == forward.size();
  }

  std::filesystem::path temp_file(char const* name) {
    return std::filesystem::temp_directory_path() / name;
  }

}  // namespace

TEST_CASE("triangulation", "[geometry]") {
  for (int R : {3, 4, 8}) {
    CHECK(triangulate(1, R).euler_characteristic() == 0);
    CHECK(triangulate(2, R).euler_characteristic() == -2);
    CHECK(triangulate(3, R).euler_characteristic() == -4);
  }
  CHECK(closed_and_oriented(triangulate(1, 3)));
  CHECK(closed_and_oriented(triangulate(2, 5)));
  CHECK_THROWS_AS(triangulate(1, 2), geometry_error);
  CHECK_THROWS_WITH(triangulate(2, 2), Catch::Matchers::ContainsSubstring("3"));
  CHECK_THROWS_AS(triangulate(0, 8), geometry_error);
}

TEST_CASE("meridian", "[geometry]") {
  for (int g : {1, 2}) {
    auto const s = triangulate(g, 6);
    auto const C = meridian(s);
    REQUIRE(C.size() >= 3);
    CHECK(vertex_graph_connected_without(s, C));
    CHECK(complement_connected(s, C));
    for (std::size_t k = 0; k < C.size(); ++k) {
      CHECK(s.find_edge(C.vertices[k], C.vertices[(k + 1) % C.size()]) < s.edges.size());
      CHECK(C.turns[k] == Rational(static_cast<long long>(k), static_cast<long long>(C.size())));
      CHECK(C.angle(k) == Catch::Approx(2 * std::numbers::pi * k / C.size()));
    }
  }
}

TEST_CASE("retraction", "[geometry]") {
  SECTION("flat torus") {
    for (int R : {3, 8, 10}) {
      auto const s = triangulate(1, R);
      auto const C = meridian(s);
      auto const r = build_retraction(s, C);
      for (std::size_t v = 0; v < s.vertex_count; ++v) {
        CHECK(std::fabs(r.lift[v] - s.position[v][0]) <= 1e-12);
      }
      CHECK(winding_along(C, r) == 1);
    }
  }
  SECTION("identity on C, any genus") {
    for (int g : {1, 2, 3}) {
      auto const s = triangulate(g, 8);
      auto const C = meridian(s);
      auto const r = build_retraction(s, C);
      for (std::size_t k = 0; k < C.size(); ++k) {
        REQUIRE(r.exact[C.vertices[k]]);
        CHECK(*r.exact[C.vertices[k]] == C.turns[k]);
      }
      CHECK(winding_along(C, r) == 1);
      CHECK(max_triangle_spread(s, r) < 0.5);
      CHECK(r.residual <= 1e-10);
    }
  }
  SECTION("small meshes are solved exactly") {
    auto const s = triangulate(1, 4);
    auto const r = build_retraction(s, meridian(s));
    CHECK(r.exact_solve);
    for (auto const& x : r.exact) {
      CHECK(x.has_value());
    }
    auto const big = triangulate(2, 12);
    CHECK_FALSE(build_retraction(big, meridian(big)).exact_solve);
  }
}

TEST_CASE("section maps", "[geometry]") {
  auto const s = triangulate(1, 4);
  auto const r = build_retraction(s, meridian(s));
  CHECK(section_maps(r, 1).offsets == std::vector<Rational>{Rational(1, 2)});
  auto three = section_maps(r, 3);
  CHECK(three.offsets == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  CHECK(three.offset_angle(0) == Catch::Approx(std::numbers::pi / 2));
  CHECK_THROWS_AS(section_maps(r, 0), geometry_error);
}

TEST_CASE("verification", "[geometry]") {
  SECTION("g=1, n=3") {
    auto const s   = triangulate(1, 8);
    auto const C   = meridian(s);
    auto const r   = build_retraction(s, C);
    auto const rep = verify_sections(s, C, r, section_maps(r, 3));
    CHECK(rep.passed());
    CHECK(rep.min_separation_turns == Rational(1, 4));
    CHECK(rep.min_separation() == Catch::Approx(std::numbers::pi / 2));
  }
  SECTION("g=2, n=5") {
    auto const s   = triangulate(2, 8);
    auto const C   = meridian(s);
    auto const r   = build_retraction(s, C);
    auto const rep = verify_sections(s, C, r, section_maps(r, 5));
    CHECK(rep.passed());
    CHECK(rep.failures.empty());
    CHECK(rep.samples == s.vertex_count + s.edges.size());
    CHECK(rep.min_separation_turns == Rational(1, 6));
    CHECK(rep.observed_min_separation >= rep.min_separation() - 1e-12);
  }
  SECTION("points of C are rotated") {
    auto const s    = triangulate(1, 6);
    auto const C    = meridian(s);
    auto const r    = build_retraction(s, C);
    auto const maps = section_maps(r, 2);
    for (auto const& p : mesh_samples(s, C, r)) {
      if (!p.on_c) {
        continue;
      }
      REQUIRE(p.exact_turns);
      for (auto const& off : maps.offsets) {
        Rational img = *p.exact_turns + off;
        if (img >= 1) {
          img -= 1;
        }
        CHECK(img != *p.exact_turns);
      }
    }
  }
  SECTION("a broken retraction is reported") {
    auto const s = triangulate(1, 6);
    auto const C = meridian(s);
    auto       r = build_retraction(s, C);
    r.exact[C.vertices[1]] = Rational(1, 2);
    auto const rep = verify_sections(s, C, r, section_maps(r, 2));
    CHECK_FALSE(rep.retraction_exact);
    CHECK_FALSE(rep.passed());
  }
}

TEST_CASE("export", "[geometry]") {
  auto const s    = triangulate(1, 4);
  auto const C    = meridian(s);
  auto const r    = build_retraction(s, C);
  auto const maps = section_maps(r, 1);

  SECTION("empty sample list") {
    auto const d    = section_data(s, C, maps, {});
    auto const path = temp_file("mixbraid_empty.json");
    export_section_data(d, path.string());
    auto const j = nlohmann::json::parse(std::ifstream(path));
    CHECK(j["samples"].is_array());
    CHECK(j["samples"].empty());
    CHECK(j["cycle"].size() == C.size());
    std::filesystem::remove(path);
  }
  SECTION("a point of C at angle 0 goes to pi") {
    SamplePoint p;
    for (auto const& q : mesh_samples(s, C, r)) {
      if (q.on_c && q.exact_turns && *q.exact_turns == 0) {
        p = q;
        break;
      }
    }
    REQUIRE(p.on_c);
    auto const d = section_data(s, C, maps, {p});
    REQUIRE(d.samples.size() == 1);
    CHECK(d.samples[0].theta == 0);
    REQUIRE(d.samples[0].images.size() == 1);
    CHECK(d.samples[0].images[0] == Catch::Approx(std::numbers::pi));
  }
  SECTION("round trip") {
    auto const d    = section_data(s, C, maps, mesh_samples(s, C, r));
    auto const path = temp_file("mixbraid_round_trip.json");
    export_section_data(d, path.string());
    CHECK(load_section_data(path.string()) == d);
    std::filesystem::remove(path);
    auto const j = to_json(d);
    for (auto key : {"g", "n", "resolution", "cycle", "samples"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["samples"][0]["point"].size() == 2);
  }
  SECTION("I/O failure") {
    CHECK_THROWS_AS(export_section_data(section_data(s, C, maps, {}), "/nonexistent/dir/x.json"),
                    geometry_error);
    CHECK_THROWS_AS(load_section_data("/nonexistent/dir/x.json"), geometry_error);
  }
}
