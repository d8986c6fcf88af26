#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "mkh/diagram.hpp"
#include "random_diagrams.hpp"

using namespace mkh;
using testing::load_fixture;

namespace {

std::size_t circles(const Diagram& d, std::vector<int> s) { return resolve(d, s).circles.size(); }

int total_ray_parity(const Diagram& d, int i) {
  int sum = 0;
  for (const auto& [arc, rays] : d.arc_rays()) sum += rays[static_cast<std::size_t>(i)];
  return sum % 2;
}

}  // namespace

TEST_CASE("parse the unknot and the Hopf link") {
  const Diagram u = load_fixture("unknot.json");
  CHECK(u.n_punctures() == 0);
  CHECK(u.crossing_count() == 0);
  CHECK(u.free_loops() == std::vector<EnclosureVector>{{}});

  const Diagram h = load_fixture("hopf.json");
  CHECK(h.crossing_count() == 2);
  CHECK(h.arcs().size() == 4);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_diagram("{"), ParseError);
  CHECK_THROWS_AS(parse_diagram("[]"), ParseError);
  CHECK_THROWS_AS(parse_diagram(R"({"crossings": []})"), ParseError);
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 0, "crossings": [[1, 2, 3]]})"), ParseError);
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 1, "crossings": [], "arc_rays": {"x": [1]}})"),
                  ParseError);
}

TEST_CASE("validation errors") {
  // Arc 3 used once.
  try {
    parse_diagram(R"({"punctures": 0, "crossings": [[4, 1, 3, 2], [2, 5, 1, 4]]})");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("open diagram") != std::string::npos);
  }
  // Ray vector of the wrong length.
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 2, "crossings": [[4, 1, 3, 2], [2, 3, 1, 4]],
                                    "arc_rays": {"1": [1]}})"),
                  ValidationError);
  // Negative ray count.
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 1, "crossings": [[4, 1, 3, 2], [2, 3, 1, 4]],
                                    "arc_rays": {"1": [-1]}})"),
                  ValidationError);
  // Rays on an arc that does not exist.
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 1, "crossings": [[4, 1, 3, 2], [2, 3, 1, 4]],
                                    "arc_rays": {"9": [1]}})"),
                  ValidationError);
  // Free loop parity vector of the wrong length, and a non-parity entry.
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 1, "crossings": [], "free_loops": [[]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 1, "crossings": [], "free_loops": [[2]]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": -1, "crossings": []})"), ValidationError);
  // Non-positive arc identifier.
  CHECK_THROWS_AS(parse_diagram(R"({"punctures": 0, "crossings": [[0, 1, 1, 0]]})"), ValidationError);
}

TEST_CASE("crossing signs") {
  CHECK(crossing_signs(load_fixture("hopf.json")) == CrossingSigns{0, 2, -2});
  CHECK(crossing_signs(load_fixture("unknot.json")) == CrossingSigns{0, 0, 0});
  const Diagram mirror = parse_diagram(R"({"punctures": 0, "crossings": [[1, 3, 2, 4], [3, 1, 4, 2]]})");
  CHECK(crossing_signs(mirror) == CrossingSigns{2, 0, 2});
  // Flipping one crossing leaves a component that only passes over; the PD
  // code no longer fixes its orientation, so the other sign may change.
  const Diagram once = change_crossing(load_fixture("hopf.json"), 0);
  CHECK(crossing_signs(once).writhe % 2 == 0);
  CHECK(crossing_signs(change_crossing(mirror, 0)).n_minus >= 1);
}

TEST_CASE("smoothing convention") {
  CHECK(smoothing_partner(0, 0) == 1);
  CHECK(smoothing_partner(2, 0) == 3);
  CHECK(smoothing_partner(0, 1) == 3);
  CHECK(smoothing_partner(1, 1) == 2);
}

TEST_CASE("Hopf cube shape") {
  const Diagram h = load_fixture("hopf.json");
  CHECK(circles(h, {0, 0}) == 2);
  CHECK(circles(h, {1, 0}) == 1);
  CHECK(circles(h, {0, 1}) == 1);
  CHECK(circles(h, {1, 1}) == 2);
  CHECK(resolve(h, {0, 1}) == resolve(h, {0, 1}));
  CHECK(resolve(h, std::vector<int>{1, 0}) == resolve(h, std::uint32_t{1}));
  CHECK_THROWS(resolve(h, std::vector<int>{0}));
}

TEST_CASE("enclosures of the two-puncture Hopf link") {
  const Diagram h = load_fixture("hopf2.json");
  // Oriented resolution: the outer circle surrounds both punctures.
  std::multiset<EnclosureVector> top, bottom;
  for (const auto& c : resolve(h, {1, 1}).circles) top.insert(c.enclosure);
  for (const auto& c : resolve(h, {0, 0}).circles) bottom.insert(c.enclosure);
  CHECK(top == std::multiset<EnclosureVector>{{1, 1}, {0, 0}});
  CHECK(bottom == std::multiset<EnclosureVector>{{1, 0}, {0, 1}});
}

TEST_CASE("faces satisfy Euler's formula") {
  for (const char* name : {"hopf.json", "hopf2.json", "picture_hanging.json"}) {
    const Diagram d = load_fixture(name);
    const auto v = static_cast<long>(d.crossing_count());
    CHECK(v - 2 * v + static_cast<long>(faces(d).size()) == 2);
    CHECK(graph_components(d) == 1);
  }
}

TEST_CASE("non-planar PD codes are rejected") {
  // Four-crossing code whose face count breaks Euler's formula.
  CHECK_THROWS_AS(Diagram(0, {Crossing{{1, 5, 2, 6}}, Crossing{{5, 3, 6, 4}},
                              Crossing{{2, 7, 3, 8}}, Crossing{{7, 1, 8, 4}}}),
                  ValidationError);
}

TEST_CASE("emit and parse round trip") {
  for (const char* name :
       {"unknot.json", "hopf.json", "hopf_annular.json", "hopf2.json", "picture_hanging.json"}) {
    const Diagram d = load_fixture(name);
    CHECK(parse_diagram(emit_diagram(d)) == d);
  }
  testing::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Diagram d = testing::random_diagram(rng, 6, 3);
    CHECK(parse_diagram(emit_diagram(d)) == d);
  }
}

TEST_CASE("Reidemeister I") {
  const Diagram u = load_fixture("unknot.json");
  const Diagram pos = apply_r1_free_loop(u, 0, Chirality::positive);
  const Diagram neg = apply_r1_free_loop(u, 0, Chirality::negative);
  CHECK(pos.crossing_count() == 1);
  CHECK(crossing_signs(pos).writhe == 1);
  CHECK(crossing_signs(neg).writhe == -1);

  const Diagram h = load_fixture("hopf2.json");
  for (ArcId a : h.arcs()) {
    for (Chirality c : {Chirality::positive, Chirality::negative}) {
      const Diagram k = apply_r1(h, a, c);
      CHECK(k.crossing_count() == 3);
      CHECK(crossing_signs(k).writhe == -2 + (c == Chirality::positive ? 1 : -1));
    }
  }
  CHECK_THROWS_AS(apply_r1(h, 99, Chirality::positive), ValidationError);
}

TEST_CASE("Reidemeister II") {
  const Diagram two_loops(0, {}, {}, {{}, {}});
  const Diagram d = apply_r2_free_loops(two_loops, 0, 1);
  CHECK(d.crossing_count() == 2);
  CHECK(crossing_signs(d).writhe == 0);

  const Diagram h = load_fixture("hopf.json");
  const Diagram moved = apply_r2(h, 1, 3);
  CHECK(moved.crossing_count() == 4);
  const auto before = crossing_signs(h), after = crossing_signs(moved);
  CHECK(after.n_plus == before.n_plus + 1);
  CHECK(after.n_minus == before.n_minus + 1);
  CHECK_THROWS_AS(apply_r2(h, 1, 99), ValidationError);
}

TEST_CASE("random diagrams: merge/split dichotomy and ray parity conservation") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const Diagram d = testing::random_moves(testing::random_diagram(rng, 5, 3), rng, 2);
    const std::size_t n = d.crossing_count();
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) {
      const auto r = resolve(d, v);
      for (int i = 0; i < d.n_punctures(); ++i) {
        int parity = 0;
        for (const auto& c : r.circles) {
          if (!c.free_loop) parity += c.enclosure[static_cast<std::size_t>(i)];
        }
        CHECK(parity % 2 == total_ray_parity(d, i));
      }
      for (std::size_t j = 0; j < n; ++j) {
        if ((v >> j) & 1) continue;
        const auto k1 = r.circles.size();
        const auto k2 = resolve(d, v | (std::uint32_t{1} << j)).circles.size();
        CHECK((k2 == k1 + 1 || k2 + 1 == k1));
      }
    }
  }
}
