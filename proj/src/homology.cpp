#include "mkh/homology.hpp"

#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mkh {

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::kh: return "kh";
    case Theory::akh: return "akh";
    case Theory::mkh: return "mkh";
    case Theory::aps: return "aps";
  }
  return "?";
}

bool TableKey::operator<(const TableKey& o) const {
  return std::tie(h, q, key) < std::tie(o.h, o.q, o.key);
}

std::size_t HomologyTable::total() const {
  std::size_t t = 0;
  for (const auto& [k, r] : ranks) t += r;
  return t;
}

std::map<int, std::size_t> HomologyTable::totals_by_h() const {
  std::map<int, std::size_t> out;
  for (const auto& [k, r] : ranks) out[k.h] += r;
  return out;
}

std::map<std::pair<int, int>, std::size_t> HomologyTable::totals_by_hq() const {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [k, r] : ranks) out[{k.h, k.q}] += r;
  return out;
}

BasedComplex gr_gsigma(const BasedComplex& c) {
  return associated_graded(c, [](const MultiDegree& md) { return md.gsigma; }, product_leq);
}

BasedComplex gr_puncture(const BasedComplex& c, int keep) {
  return associated_graded(
      c, [keep](const MultiDegree& md) { return md.gsigma.at(static_cast<std::size_t>(keep - 1)); },
      [](int a, int b) { return a <= b; });
}

BasedComplex gr_phi(const BasedComplex& c) {
  return associated_graded(c, [](const MultiDegree& md) { return md.phi; }, phi_leq);
}

namespace {

template <class KeyFn>
HomologyTable tabulate(Theory kind, const BasedComplex& c, KeyFn key) {
  HomologyTable t;
  t.kind = kind;
  auto ranks = homology_ranks(c, [&](const MultiDegree& md) { return std::pair{md.q, key(md)}; });
  for (const auto& [hk, r] : ranks) {
    t.ranks.emplace(TableKey{hk.first, hk.second.first, GradingKey(hk.second.second)}, r);
  }
  return t;
}

void check_puncture(int n, int keep) {
  if (keep < 1 || keep > n) {
    throw std::invalid_argument("puncture index " + std::to_string(keep) + " is outside 1.." +
                                std::to_string(n));
  }
}

}  // namespace

HomologyTable kh(const KhovanovComplex& kc) {
  return tabulate(Theory::kh, kc.complex, [](const MultiDegree&) { return std::monostate{}; });
}

HomologyTable mkh(const KhovanovComplex& kc) {
  return tabulate(Theory::mkh, gr_gsigma(kc.complex),
                  [](const MultiDegree& md) { return md.gsigma; });
}

HomologyTable akh(const KhovanovComplex& kc, int keep) {
  check_puncture(kc.n_punctures, keep);
  return tabulate(Theory::akh, gr_puncture(kc.complex, keep), [keep](const MultiDegree& md) {
    return md.gsigma[static_cast<std::size_t>(keep - 1)];
  });
}

HomologyTable aps_tilde(const KhovanovComplex& kc) {
  return tabulate(Theory::aps, gr_phi(kc.complex), [](const MultiDegree& md) { return md.phi; });
}

HomologyTable kh(const Diagram& d) { return kh(build_complex(d)); }
HomologyTable mkh(const Diagram& d) { return mkh(build_complex(d)); }
HomologyTable akh(const Diagram& d, int keep) {
  check_puncture(d.n_punctures(), keep);
  return akh(build_complex(d), keep);
}
HomologyTable aps_tilde(const Diagram& d) { return aps_tilde(build_complex(d)); }

// ---------------------------------------------------------------------------

std::string Variable::name() const {
  if (family == 'y') return "y" + std::to_string(index.empty() ? 0 : index.front());
  return std::string(1, family) + format_set(index);
}

void LaurentPoly::add(int q_exponent, const Monomial& m, long long coefficient) {
  if (coefficient == 0) return;
  Monomial clean;
  for (const auto& [v, e] : m) {
    if (e != 0) clean.emplace(v, e);
  }
  auto [it, fresh] = terms_.emplace(std::pair{q_exponent, clean}, coefficient);
  if (!fresh) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [qm, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1) os << mag << '*';
    os << "q^" << qm.first;
    for (const auto& [v, e] : qm.second) os << '*' << v.name() << '^' << e;
  }
  return os.str();
}

namespace {

Monomial monomial_of(Theory kind, const GradingKey& key, int keep) {
  Monomial m;
  switch (kind) {
    case Theory::kh:
      break;
    case Theory::akh:
      m[Variable{'y', {keep}}] = std::get<int>(key);
      break;
    case Theory::mkh: {
      const auto& g = std::get<std::vector<int>>(key);
      for (std::size_t i = 0; i < g.size(); ++i) m[Variable{'y', {static_cast<int>(i) + 1}}] = g[i];
      break;
    }
    case Theory::aps:
      for (const auto& [set, c] : std::get<Phi>(key)) m[Variable{'x', set}] = c;
      break;
  }
  return m;
}

GradingKey key_of(Theory kind, const MultiDegree& md, int keep) {
  switch (kind) {
    case Theory::kh: return std::monostate{};
    case Theory::akh: return md.gsigma.at(static_cast<std::size_t>(keep - 1));
    case Theory::mkh: return md.gsigma;
    case Theory::aps: return md.phi;
  }
  return std::monostate{};
}

int annular_puncture(const HomologyTable&) { return 0; }

}  // namespace

LaurentPoly euler(const HomologyTable& t) {
  LaurentPoly p;
  // AKh tables do not record which puncture they were taken around; the
  // annular variable is written y0.
  for (const auto& [k, r] : t.ranks) {
    const long long sign = k.h % 2 == 0 ? 1 : -1;
    p.add(k.q, monomial_of(t.kind, k.key, annular_puncture(t)), sign * static_cast<long long>(r));
  }
  return p;
}

LaurentPoly euler_of_chains(const KhovanovComplex& kc, Theory kind, int keep) {
  if (kind == Theory::akh) check_puncture(kc.n_punctures, keep);
  LaurentPoly p;
  for (const auto& md : kc.complex.degrees()) {
    const long long sign = md.h % 2 == 0 ? 1 : -1;
    p.add(md.q, monomial_of(kind, key_of(kind, md, keep), kind == Theory::akh ? 0 : keep), sign);
  }
  return p;
}

LaurentPoly chi_h(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [qm, c] : p.terms()) {
    Monomial m;
    for (const auto& [v, e] : qm.second) {
      if (v.family == 'x') {
        for (int i : v.index) m[Variable{'y', {i}}] += e;
      } else {
        m[v] += e;
      }
    }
    out.add(qm.first, m, c);
  }
  return out;
}

LaurentPoly forget_variables(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [qm, c] : p.terms()) out.add(qm.first, {}, c);
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json key_to_json(const GradingKey& k) {
  if (std::holds_alternative<std::monostate>(k)) return nullptr;
  if (const int* v = std::get_if<int>(&k)) return *v;
  if (const auto* g = std::get_if<std::vector<int>>(&k)) return *g;
  auto arr = nlohmann::json::array();
  for (const auto& [set, c] : std::get<Phi>(k)) {
    arr.push_back({{"punctures", set}, {"coeff", c}});
  }
  return arr;
}

std::string format_key(const GradingKey& k) {
  if (std::holds_alternative<std::monostate>(k)) return "";
  if (const int* v = std::get_if<int>(&k)) return std::to_string(*v);
  if (const auto* g = std::get_if<std::vector<int>>(&k)) {
    std::string s;
    for (std::size_t i = 0; i < g->size(); ++i) s += (i ? "," : "") + std::to_string((*g)[i]);
    return s;
  }
  return format_phi(std::get<Phi>(k));
}

nlohmann::json to_json(const HomologyTable& t) {
  nlohmann::json ranks = nlohmann::json::array();
  for (const auto& [k, r] : t.ranks) {
    ranks.push_back({{"h", k.h}, {"q", k.q}, {"key", key_to_json(k.key)}, {"rank", r}});
  }
  return {{"kind", theory_name(t.kind)}, {"ranks", ranks}};
}

std::string to_text(const HomologyTable& t) {
  std::ostringstream os;
  const char* key_header = t.kind == Theory::kh    ? nullptr
                           : t.kind == Theory::akh ? "k"
                           : t.kind == Theory::mkh ? "gsigma"
                                                   : "phi";
  os << theory_name(t.kind) << '\n';
  os << "h\tq\t";
  if (key_header) os << key_header << '\t';
  os << "rank\n";
  for (const auto& [k, r] : t.ranks) {
    os << k.h << '\t' << k.q << '\t';
    if (key_header) os << format_key(k.key) << '\t';
    os << r << '\n';
  }
  return os.str();
}

}  // namespace mkh
