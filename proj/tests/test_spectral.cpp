#include "doctest.h"
#include "fixtures.hpp"
#include "mkh/spectral.hpp"
#include "oracles.hpp"

using namespace mkh;
using testing::load_fixture;

namespace {

using Totals = std::map<int, std::size_t>;

MultiDegree deg(int h, std::vector<int> g) {
  MultiDegree md;
  md.h = h;
  md.gsigma = std::move(g);
  return md;
}

}  // namespace

TEST_CASE("flatten values") {
  MultiDegree a = deg(0, {1, -1}), b = deg(0, {-1, -1});
  phi_add(a.phi, {1}, 1);
  phi_add(a.phi, {1, 2}, -1);
  BasedComplex c({a, b}, {{}, {}});
  CHECK(flatten(c, FlattenBase::gsigma).values == std::vector<int>{0, -2});
  CHECK(flatten(c, FlattenBase::phi).values == std::vector<int>{0, 0});
  CHECK(flatten(c, FlattenBase::gsigma_subset, {2}).values == std::vector<int>{-1, -1});

  BasedComplex up({deg(0, {-1}), deg(1, {1})}, {{{1, Rational(1)}}, {}});
  CHECK_THROWS_AS(flatten(up, FlattenBase::gsigma), FiltrationError);
}

TEST_CASE("zero differential: every page is the chain group") {
  BasedComplex c({deg(0, {1}), deg(0, {-1}), deg(1, {1})}, {{}, {}, {}});
  const auto r = pages(c, flatten(c, FlattenBase::gsigma));
  for (const auto& [idx, page] : r.pages) CHECK(page == r.pages.at(0));
  CHECK(r.stabilized_at == 0);
  CHECK(totals_by_h(r.limit) == Totals{{0, 2}, {1, 1}});
}

TEST_CASE("constant filtration stabilizes at E_1 with E_1 = homology") {
  const auto kc = build_complex(load_fixture("hopf.json"));
  const auto r = pages(kc.complex, flatten(kc.complex, FlattenBase::gsigma));
  CHECK(r.stabilized_at <= 1);
  CHECK(totals_by_hq(r.pages.at(1)) == kh(kc).totals_by_hq());
}

TEST_CASE("annular Hopf: AKh collapses to Kh") {
  const auto kc = build_complex(load_fixture("hopf_annular.json"));
  const auto r = pages(kc.complex, flatten(kc.complex, FlattenBase::gsigma));
  CHECK(totals_by_h(r.pages.at(1)) == Totals{{-2, 2}, {-1, 1}, {0, 3}});
  CHECK(totals_by_h(r.limit) == Totals{{-2, 2}, {0, 2}});
  // Odd differentials vanish.
  CHECK(r.pages.at(2) == r.pages.at(1));
}

TEST_CASE("two-puncture Hopf: MKh to Kh") {
  const auto kc = build_complex(load_fixture("hopf2.json"));
  const auto r = pages(kc.complex, flatten(kc.complex, FlattenBase::gsigma));
  CHECK(totals_by_h(r.pages.at(1)) == Totals{{-2, 3}, {-1, 1}, {0, 2}});
  CHECK(totals_by_h(r.limit) == Totals{{-2, 2}, {0, 2}});
  CHECK(r.limit == testing::dense_limit(kc.complex, flatten(kc.complex, FlattenBase::gsigma).values));
}

TEST_CASE("r_max bounds the recorded pages") {
  const auto kc = build_complex(load_fixture("hopf2.json"));
  const auto f = flatten(kc.complex, FlattenBase::gsigma);
  const auto r = pages(kc.complex, f, 1);
  CHECK(r.pages.size() == 2);
  CHECK(totals_by_h(r.limit) == Totals{{-2, 2}, {0, 2}});
  const auto many = pages(kc.complex, f, 12);
  CHECK(many.pages.size() == 13);
  CHECK(many.pages.at(12) == many.limit);
}

TEST_CASE("fill_punctures") {
  const auto kc = build_complex(load_fixture("hopf2.json"));
  const auto all = fill_punctures(kc.complex, {1, 2}, 2);
  CHECK(all.degrees() == kc.complex.degrees());

  KhovanovComplex none = kc;
  none.complex = fill_punctures(kc.complex, {}, 2);
  none.n_punctures = 0;
  for (const auto& md : none.complex.degrees()) {
    CHECK(md.gsigma.empty());
    CHECK(md.phi.empty());
  }
  CHECK(mkh::mkh(none).totals_by_hq() == kh(kc).totals_by_hq());

  KhovanovComplex one = kc;
  one.complex = fill_punctures(kc.complex, {1}, 2);
  one.n_punctures = 1;
  const auto m = mkh::mkh(one), a = akh(kc, 1);
  std::map<TableKey, std::size_t> relabelled;
  for (const auto& [key, r] : m.ranks) {
    relabelled[TableKey{key.h, key.q, std::get<std::vector<int>>(key.key)[0]}] = r;
  }
  CHECK(relabelled == a.ranks);

  CHECK_THROWS_AS(fill_punctures(kc.complex, {3}, 2), std::invalid_argument);
  CHECK_THROWS_AS(fill_punctures(kc.complex, {1, 1}, 2), std::invalid_argument);
}

TEST_CASE("fill_punctures intersects curve classes") {
  MultiDegree md = deg(0, {1, 1, -1});
  phi_add(md.phi, {1, 3}, 1);
  phi_add(md.phi, {2}, -1);
  BasedComplex c({md}, {{}});
  const auto f = fill_punctures(c, {3, 1}, 3);
  CHECK(f.degree(0).gsigma == std::vector<int>{1, -1});
  CHECK(f.degree(0).phi == Phi{{{1, 2}, 1}});
}

TEST_CASE("scenarios on the two-puncture Hopf link") {
  const Diagram d = load_fixture("hopf2.json");
  for (auto [which, keep] : std::vector<std::pair<Scenario, std::vector<int>>>{
           {Scenario::aps_to_mkh, {}},
           {Scenario::mkh_to_akh, {1}},
           {Scenario::mkh_to_akh, {2}},
           {Scenario::mkh_to_kh, {}},
           {Scenario::mkh_to_mkh, {2}},
           {Scenario::mkh_to_mkh, {1, 2}}}) {
    CAPTURE(scenario_name(which));
    const auto r = scenario(d, which, keep);
    CHECK(r.e1_matches());
    CHECK(r.limit_matches());
    for (auto it = r.pages.begin(); std::next(it) != r.pages.end(); ++it) {
      for (const auto& [h, n] : totals_by_h(std::next(it)->second)) CHECK(n <= totals_by_h(it->second)[h]);
    }
  }
  CHECK_THROWS_AS(scenario(d, Scenario::mkh_to_akh, {}), std::invalid_argument);
  CHECK_THROWS_AS(scenario(d, Scenario::mkh_to_akh, {3}), std::invalid_argument);
}

TEST_CASE("report serialization") {
  const auto r = scenario(load_fixture("hopf2.json"), Scenario::mkh_to_kh);
  const auto j = to_json(r);
  CHECK(j["name"] == "mkh-to-kh");
  CHECK(j["e1_matches"] == true);
  CHECK(j["limit_matches"] == true);
  CHECK(j["pages"][1]["r"] == 1);
  const std::string text = to_text(r);
  CHECK(text.find("E_1\n") != std::string::npos);
  CHECK(text.find("E_inf totals: h=-2:2 h=0:2") != std::string::npos);
}
