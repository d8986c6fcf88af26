#pragma once

// Rank tables of Kh, AKh, MKh and the APS variant, graded Euler
// characteristics, and the Hurewicz-type substitution between them.

#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mkh/diagram.hpp"
#include "mkh/exactalg.hpp"
#include "mkh/khovanov.hpp"

namespace mkh {

enum class Theory { kh, akh, mkh, aps };

std::string theory_name(Theory t);

// Extra degree recorded by each theory: nothing (Kh), the annular degree
// (AKh), a Z^n vector (MKh) or a formal sum of curve classes (APS).
using GradingKey = std::variant<std::monostate, int, std::vector<int>, Phi>;

struct TableKey {
  int h = 0;
  int q = 0;
  GradingKey key;

  bool operator==(const TableKey&) const = default;
  bool operator<(const TableKey& o) const;
};

struct HomologyTable {
  Theory kind = Theory::kh;
  std::map<TableKey, std::size_t> ranks;  // nonzero ranks only

  bool operator==(const HomologyTable&) const = default;

  std::size_t total() const;
  std::map<int, std::size_t> totals_by_h() const;
  std::map<std::pair<int, int>, std::size_t> totals_by_hq() const;
};

// Tables computed from an already built cube.
HomologyTable kh(const KhovanovComplex& kc);
HomologyTable mkh(const KhovanovComplex& kc);
HomologyTable akh(const KhovanovComplex& kc, int keep);  // 1-based puncture
HomologyTable aps_tilde(const KhovanovComplex& kc);

HomologyTable kh(const Diagram& d);
HomologyTable mkh(const Diagram& d);
HomologyTable akh(const Diagram& d, int keep);
HomologyTable aps_tilde(const Diagram& d);

// Associated graded complexes used by the theories above.
BasedComplex gr_gsigma(const BasedComplex& c);
BasedComplex gr_puncture(const BasedComplex& c, int keep);
BasedComplex gr_phi(const BasedComplex& c);

// ---------------------------------------------------------------------------
// Laurent polynomials in q and the x_c (curve class) / y_i (puncture) variables.

struct Variable {
  char family = 'y';       // 'x' keyed by a puncture set, 'y' by one puncture
  std::vector<int> index;  // sorted puncture indices

  auto operator<=>(const Variable&) const = default;
  bool operator==(const Variable&) const = default;
  std::string name() const;
};

using Monomial = std::map<Variable, int>;  // no zero exponents

class LaurentPoly {
 public:
  void add(int q_exponent, const Monomial& m, long long coefficient);
  const std::map<std::pair<int, Monomial>, long long>& terms() const { return terms_; }
  bool operator==(const LaurentPoly&) const = default;

  // Sorted text form, e.g. "q^-6 + q^-4*y1^-1 - 2*q^0*x{1,2}^1".
  std::string to_string() const;

 private:
  std::map<std::pair<int, Monomial>, long long> terms_;
};

LaurentPoly euler(const HomologyTable& t);
// Alternating generator count of the chain complex, keyed like the theory.
LaurentPoly euler_of_chains(const KhovanovComplex& kc, Theory kind, int keep = 1);
// x_c -> prod_{i in c} y_i, q -> q.
LaurentPoly chi_h(const LaurentPoly& p);
// Sets every x and y variable to 1.
LaurentPoly forget_variables(const LaurentPoly& p);

nlohmann::json to_json(const HomologyTable& t);
nlohmann::json key_to_json(const GradingKey& k);
std::string format_key(const GradingKey& k);
std::string to_text(const HomologyTable& t);

}  // namespace mkh
