// Tables are unchanged by Reidemeister moves away from the punctures.

#include "doctest.h"
#include "fixtures.hpp"
#include "mkh/homology.hpp"
#include "random_diagrams.hpp"

using namespace mkh;
using testing::load_fixture;

namespace {

struct Tables {
  HomologyTable kh, mkh, aps;
  std::vector<HomologyTable> akh;
  bool operator==(const Tables&) const = default;
};

Tables tables(const Diagram& d) {
  const auto kc = build_complex(d);
  Tables t{mkh::kh(kc), mkh::mkh(kc), aps_tilde(kc), {}};
  for (int i = 1; i <= d.n_punctures(); ++i) t.akh.push_back(mkh::akh(kc, i));
  return t;
}

void check_same(const Tables& a, const Tables& b) {
  CHECK(a.kh == b.kh);
  CHECK(a.mkh == b.mkh);
  CHECK(a.aps == b.aps);
  CHECK(a.akh == b.akh);
}

const char* const fixtures[] = {"unknot.json", "hopf.json", "hopf_annular.json", "hopf2.json",
                                "picture_hanging.json"};

}  // namespace

TEST_CASE("random R1/R2 variants of every fixture") {
  testing::Rng rng(99);
  for (const char* name : fixtures) {
    CAPTURE(name);
    const Diagram d = load_fixture(name);
    const Tables base = tables(d);
    int variants = 0;
    for (int attempt = 0; variants < 10 && attempt < 100; ++attempt) {
      std::uniform_int_distribution<int> moves(1, 3);
      const Diagram v = testing::random_moves(d, rng, moves(rng));
      if (v.crossing_count() == d.crossing_count() || v.crossing_count() > d.crossing_count() + 5) continue;
      check_same(tables(v), base);
      ++variants;
    }
    CHECK(variants == 10);
  }
}

TEST_CASE("curated R3 pairs") {
  for (const char* pair : {"r3_pair1", "r3_pair2"}) {
    CAPTURE(pair);
    const Diagram a = load_fixture(std::string(pair) + "_a.json");
    const Diagram b = load_fixture(std::string(pair) + "_b.json");
    CHECK(a.crossings() != b.crossings());
    check_same(tables(a), tables(b));
  }
}

TEST_CASE("random R3 moves on braid closures") {
  testing::Rng rng(5);
  std::uniform_int_distribution<int> strands_dist(3, 4), extra(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const int strands = strands_dist(rng);
    auto [wa, wb] = testing::random_r3_words(rng, strands, extra(rng));
    std::uniform_int_distribution<int> gap(0, strands - 1);
    const std::vector<int> gaps{gap(rng), gap(rng)};
    check_same(tables(testing::braid_closure_with_gaps(wa, strands, gaps)),
               tables(testing::braid_closure_with_gaps(wb, strands, gaps)));
  }
}

TEST_CASE("the tables see the punctures") {
  const Tables hopf2 = tables(load_fixture("hopf2.json"));
  CHECK(hopf2.kh == tables(load_fixture("hopf.json")).kh);
  CHECK(hopf2.mkh.total() == 6);
  CHECK(hopf2.kh.total() == 4);
}
