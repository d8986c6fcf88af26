#pragma once

// Spectral sequences of Z-filtered based complexes, obtained by flattening
// the Z^n (puncture) or curve-class gradings, and the comparison scenarios
// between the theories.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mkh/diagram.hpp"
#include "mkh/exactalg.hpp"
#include "mkh/homology.hpp"

namespace mkh {

enum class FlattenBase { gsigma, phi, gsigma_subset };

struct FlattenedGrading {
  FlattenBase base = FlattenBase::gsigma;
  std::vector<int> keep;    // used by gsigma_subset, 1-based
  std::vector<int> values;  // one per generator
};

// Throws FiltrationError when some differential entry raises the value.
FlattenedGrading flatten(const BasedComplex& c, FlattenBase base, const std::vector<int>& keep = {});

struct PageKey {
  int p = 0;
  int h = 0;
  int q = 0;
  auto operator<=>(const PageKey&) const = default;
};

using PageRanks = std::map<PageKey, std::size_t>;  // nonzero ranks only

std::map<int, std::size_t> totals_by_h(const PageRanks& page);
std::map<std::pair<int, int>, std::size_t> totals_by_hq(const PageRanks& page);

struct SpectralReport {
  std::string name;
  std::map<int, PageRanks> pages;  // page index r -> ranks, starting at E_0
  int stabilized_at = 0;
  PageRanks limit;

  // Comparison targets, filled in by scenario().
  std::optional<PageRanks> expected_e1;
  std::optional<std::map<std::pair<int, int>, std::size_t>> expected_limit;

  bool e1_matches() const;
  bool limit_matches() const;
};

// E_r^p = Z_r^p / (Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1}) with
// Z_r^p = {x in F_p : dx in F_{p-r}} and F_p spanned by generators of value
// <= p. Pages are recorded for r = 0 .. r_max; the limit is always computed.
// A negative r_max records every page up to the limit.
SpectralReport pages(const BasedComplex& c, const FlattenedGrading& f, int r_max = -1);

// Projects gsigma onto the kept punctures and intersects every curve class
// with them; punctures are renumbered 1..|keep| in the given order.
BasedComplex fill_punctures(const BasedComplex& c, const std::vector<int>& keep, int n_punctures);

enum class Scenario { aps_to_mkh, mkh_to_akh, mkh_to_kh, mkh_to_mkh };

std::string scenario_name(Scenario s);

// keep: the puncture for mkh_to_akh, the kept subset for mkh_to_mkh.
SpectralReport scenario(const Diagram& d, Scenario which, const std::vector<int>& keep = {},
                        int r_max = -1);

nlohmann::json to_json(const SpectralReport& r);
std::string to_text(const SpectralReport& r);

}  // namespace mkh
