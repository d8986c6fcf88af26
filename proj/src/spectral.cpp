#include "mkh/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "mkh/khovanov.hpp"

namespace mkh {

namespace {

std::vector<int> project(const std::vector<int>& g, const std::vector<int>& keep) {
  std::vector<int> out;
  out.reserve(keep.size());
  for (int k : keep) out.push_back(g.at(static_cast<std::size_t>(k - 1)));
  return out;
}

std::vector<int> checked_subset(std::vector<int> keep, int n) {
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw std::invalid_argument("puncture subset repeats an index");
  }
  for (int k : keep) {
    if (k < 1 || k > n) {
      throw std::invalid_argument("puncture index " + std::to_string(k) + " is outside 1.." +
                                  std::to_string(n));
    }
  }
  return keep;
}

}  // namespace

FlattenedGrading flatten(const BasedComplex& c, FlattenBase base, const std::vector<int>& keep) {
  FlattenedGrading f;
  f.base = base;
  f.keep = keep;
  f.values.reserve(c.size());
  for (const auto& md : c.degrees()) {
    switch (base) {
      case FlattenBase::gsigma: f.values.push_back(epsilon(md.gsigma)); break;
      case FlattenBase::phi: f.values.push_back(epsilon(md.phi)); break;
      case FlattenBase::gsigma_subset: f.values.push_back(epsilon(project(md.gsigma, keep))); break;
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (f.values[e.target] > f.values[i]) {
        throw FiltrationError("differential entry " + std::to_string(i) + " -> " +
                              std::to_string(e.target) + " raises the flattened grading");
      }
    }
  }
  return f;
}

std::map<int, std::size_t> totals_by_h(const PageRanks& page) {
  std::map<int, std::size_t> out;
  for (const auto& [k, r] : page) out[k.h] += r;
  return out;
}

std::map<std::pair<int, int>, std::size_t> totals_by_hq(const PageRanks& page) {
  std::map<std::pair<int, int>, std::size_t> out;
  for (const auto& [k, r] : page) out[{k.h, k.q}] += r;
  return out;
}

bool SpectralReport::e1_matches() const {
  auto it = pages.find(1);
  return expected_e1 && it != pages.end() && it->second == *expected_e1;
}

bool SpectralReport::limit_matches() const {
  return expected_limit && totals_by_hq(limit) == *expected_limit;
}

// ---------------------------------------------------------------------------

namespace {

// The complex splits into (h, q) blocks; d maps block (h, q) to (h + 1, q).
class PageEngine {
 public:
  PageEngine(const BasedComplex& c, const std::vector<int>& values) : c_(c), values_(values) {
    local_.resize(c.size());
    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    for (std::size_t g : order) {
      auto& b = blocks_[{c.degree(g).h, c.degree(g).q}];
      local_[g] = b.size();
      b.push_back(g);
    }
  }

  const std::map<std::pair<int, int>, std::vector<std::size_t>>& blocks() const { return blocks_; }

  std::size_t rank(int h, int q, int r, int p) {
    const auto& zr = z(h, q, r, p);
    if (zr.empty()) return 0;
    std::vector<SparseVector> boundary = z(h, q, r - 1, p - 1);
    for (const auto& v : dz(h, q, r - 1, p + r - 1)) boundary.push_back(v);
    return zr.size() - span_dimension(boundary, blocks_.at({h, q}).size());
  }

 private:
  std::size_t prefix(const std::vector<std::size_t>& gens, int p) const {
    return static_cast<std::size_t>(
        std::upper_bound(gens.begin(), gens.end(), p,
                         [&](int value, std::size_t g) { return value < values_[g]; }) -
        gens.begin());
  }

  // Z_r^p inside block (h, q), in block coordinates. Z_{-1}^p = F_p.
  // Only depends on how many sources lie in F_p and how many targets lie
  // in F_{p-r}, so the cache is keyed on those two counts.
  const std::vector<SparseVector>& z(int h, int q, int r, int p) {
    static const std::vector<SparseVector> none;
    auto bit = blocks_.find({h, q});
    if (bit == blocks_.end()) return none;
    const auto& gens = bit->second;
    const std::size_t a = prefix(gens, p);
    auto tit = blocks_.find({h + 1, q});
    const std::size_t t = tit == blocks_.end() ? 0 : tit->second.size();
    const std::size_t cut = r < 0 || t == 0 ? t : prefix(tit->second, p - r);
    auto key = std::tuple{h, q, a, cut};
    if (auto it = zcache_.find(key); it != zcache_.end()) return it->second;
    std::vector<SparseVector> out;
    SparseMatrix m(t, a);
    if (cut < t) {
      for (std::size_t j = 0; j < a; ++j) {
        for (const auto& e : c_.differential(gens[j])) {
          if (local_[e.target] >= cut) m.add(local_[e.target], j, e.coefficient);
        }
      }
    }
    if (m.nonzeros() == 0) {
      for (std::size_t j = 0; j < a; ++j) out.push_back({{j, Rational(1)}});
    } else {
      out = kernel_basis(m);
    }
    return zcache_.emplace(key, std::move(out)).first->second;
  }

  // d(Z_r^p) of block (h - 1, q), in coordinates of block (h, q).
  std::vector<SparseVector> dz(int h, int q, int r, int p) {
    std::vector<SparseVector> out;
    auto sit = blocks_.find({h - 1, q});
    if (sit == blocks_.end()) return out;
    const auto& gens = sit->second;
    for (const auto& v : z(h - 1, q, r, p)) {
      std::map<std::size_t, Rational> image;
      for (const auto& [j, x] : v) {
        for (const auto& e : c_.differential(gens[j])) image[local_[e.target]] += x * e.coefficient;
      }
      SparseVector w;
      for (auto& [t, x] : image) {
        if (x != 0) w.emplace_back(t, std::move(x));
      }
      if (!w.empty()) out.push_back(std::move(w));
    }
    return out;
  }

  const BasedComplex& c_;
  const std::vector<int>& values_;
  std::vector<std::size_t> local_;
  std::map<std::pair<int, int>, std::vector<std::size_t>> blocks_;
  std::map<std::tuple<int, int, std::size_t, std::size_t>, std::vector<SparseVector>> zcache_;
};

}  // namespace

SpectralReport pages(const BasedComplex& c, const FlattenedGrading& f, int r_max) {
  if (f.values.size() != c.size()) {
    throw std::invalid_argument("flattened grading does not match the complex");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (f.values[e.target] > f.values[i]) {
        throw FiltrationError("differential raises the filtration value");
      }
    }
  }

  SpectralReport report;
  int lo = 0, hi = 0;
  if (!f.values.empty()) {
    lo = *std::min_element(f.values.begin(), f.values.end());
    hi = *std::max_element(f.values.begin(), f.values.end());
  }
  // d_r vanishes once r exceeds the filtration width.
  const int last = hi - lo + 1;

  PageEngine engine(c, f.values);
  std::vector<PageRanks> all(static_cast<std::size_t>(last) + 1);
  for (const auto& [hq, gens] : engine.blocks()) {
    std::vector<int> levels;
    for (std::size_t g : gens) {
      if (levels.empty() || levels.back() != f.values[g]) levels.push_back(f.values[g]);
    }
    for (int r = 0; r <= last; ++r) {
      for (int p : levels) {
        const std::size_t k = engine.rank(hq.first, hq.second, r, p);
        if (k) all[static_cast<std::size_t>(r)].emplace(PageKey{p, hq.first, hq.second}, k);
      }
    }
  }

  report.limit = all.back();
  report.stabilized_at = last;
  while (report.stabilized_at > 0 &&
         all[static_cast<std::size_t>(report.stabilized_at - 1)] == report.limit) {
    --report.stabilized_at;
  }
  const int shown = r_max < 0 ? last : r_max;
  for (int r = 0; r <= shown; ++r) {
    report.pages[r] = r <= last ? all[static_cast<std::size_t>(r)] : report.limit;
  }
  return report;
}

BasedComplex fill_punctures(const BasedComplex& c, const std::vector<int>& keep, int n_punctures) {
  const auto kept = checked_subset(keep, n_punctures);
  std::vector<int> position(static_cast<std::size_t>(n_punctures) + 1, 0);
  for (std::size_t i = 0; i < kept.size(); ++i) position[kept[i]] = static_cast<int>(i) + 1;

  std::vector<MultiDegree> degrees;
  degrees.reserve(c.size());
  for (const auto& md : c.degrees()) {
    MultiDegree out;
    out.h = md.h;
    out.q = md.q;
    out.gsigma = project(md.gsigma, kept);
    for (const auto& [set, coeff] : md.phi) {
      PunctureSet s;
      for (int i : set) {
        if (position[i]) s.push_back(position[i]);
      }
      phi_add(out.phi, s, coeff);
    }
    degrees.push_back(std::move(out));
  }
  return c.with_degrees(std::move(degrees));
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::aps_to_mkh: return "aps-to-mkh";
    case Scenario::mkh_to_akh: return "mkh-to-akh";
    case Scenario::mkh_to_kh: return "mkh-to-kh";
    case Scenario::mkh_to_mkh: return "mkh-to-mkh";
  }
  return "?";
}

namespace {

PageRanks flattened(const HomologyTable& t) {
  PageRanks out;
  for (const auto& [k, r] : t.ranks) {
    int p = 0;
    if (const auto* g = std::get_if<std::vector<int>>(&k.key)) p = epsilon(*g);
    if (const auto* phi = std::get_if<Phi>(&k.key)) p = epsilon(*phi);
    if (const int* a = std::get_if<int>(&k.key)) p = *a;
    out[PageKey{p, k.h, k.q}] += r;
  }
  return out;
}

}  // namespace

SpectralReport scenario(const Diagram& d, Scenario which, const std::vector<int>& keep, int r_max) {
  const KhovanovComplex kc = build_complex(d);
  const int n = kc.n_punctures;
  BasedComplex complex;
  FlattenBase base = FlattenBase::gsigma;
  HomologyTable fine, coarse;
  std::string name = scenario_name(which);

  switch (which) {
    case Scenario::aps_to_mkh:
      complex = gr_gsigma(kc.complex);
      base = FlattenBase::phi;
      fine = aps_tilde(kc);
      coarse = mkh(kc);
      break;
    case Scenario::mkh_to_kh:
      complex = kc.complex;
      fine = mkh(kc);
      coarse = kh(kc);
      break;
    case Scenario::mkh_to_akh: {
      if (keep.size() != 1) throw std::invalid_argument("mkh-to-akh needs exactly one puncture");
      checked_subset(keep, n);
      complex = gr_puncture(kc.complex, keep.front());
      fine = mkh(kc);
      coarse = akh(kc, keep.front());
      name += " keep=" + std::to_string(keep.front());
      break;
    }
    case Scenario::mkh_to_mkh: {
      const auto kept = checked_subset(keep, n);
      complex = associated_graded(
          kc.complex, [&](const MultiDegree& md) { return project(md.gsigma, kept); }, product_leq);
      fine = mkh(kc);
      KhovanovComplex filled = kc;
      filled.complex = fill_punctures(kc.complex, kept, n);
      filled.n_punctures = static_cast<int>(kept.size());
      coarse = mkh(filled);
      name += " keep=" + format_set(kept);
      break;
    }
  }

  SpectralReport report = pages(complex, flatten(complex, base), r_max < 0 ? -1 : std::max(r_max, 1));
  report.name = name;
  report.expected_e1 = flattened(fine);
  report.expected_limit = coarse.totals_by_hq();
  return report;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json page_json(const PageRanks& page) {
  auto arr = nlohmann::json::array();
  for (const auto& [k, r] : page) arr.push_back({{"p", k.p}, {"h", k.h}, {"q", k.q}, {"rank", r}});
  return arr;
}

nlohmann::json h_totals_json(const std::map<int, std::size_t>& t) {
  auto arr = nlohmann::json::array();
  for (const auto& [h, r] : t) arr.push_back({{"h", h}, {"rank", r}});
  return arr;
}

std::map<int, std::size_t> collapse_h(const std::map<std::pair<int, int>, std::size_t>& t) {
  std::map<int, std::size_t> out;
  for (const auto& [hq, r] : t) out[hq.first] += r;
  return out;
}

std::string h_totals_text(const std::map<int, std::size_t>& t) {
  std::string s;
  for (const auto& [h, r] : t) s += " h=" + std::to_string(h) + ":" + std::to_string(r);
  return s.empty() ? " none" : s;
}

}  // namespace

nlohmann::json to_json(const SpectralReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  auto pages_json = nlohmann::json::array();
  for (const auto& [idx, page] : r.pages) {
    pages_json.push_back({{"r", idx}, {"ranks", page_json(page)}, {"totals_by_h", h_totals_json(totals_by_h(page))}});
  }
  j["pages"] = pages_json;
  j["stabilized_at"] = r.stabilized_at;
  j["limit"] = {{"ranks", page_json(r.limit)}, {"totals_by_h", h_totals_json(totals_by_h(r.limit))}};
  if (r.expected_e1) {
    j["expected_e1"] = page_json(*r.expected_e1);
    j["e1_matches"] = r.e1_matches();
  }
  if (r.expected_limit) {
    j["expected_limit_totals_by_h"] = h_totals_json(collapse_h(*r.expected_limit));
    j["limit_matches"] = r.limit_matches();
  }
  return j;
}

std::string to_text(const SpectralReport& r) {
  std::ostringstream os;
  if (!r.name.empty()) os << r.name << '\n';
  for (const auto& [idx, page] : r.pages) {
    if (idx == 0) continue;  // chain level
    os << "E_" << idx << '\n';
    os << "p\th\tq\trank\n";
    for (const auto& [k, rank] : page) os << k.p << '\t' << k.h << '\t' << k.q << '\t' << rank << '\n';
    os << "totals:" << h_totals_text(totals_by_h(page)) << '\n';
  }
  os << "stabilized at E_" << r.stabilized_at << '\n';
  os << "E_inf totals:" << h_totals_text(totals_by_h(r.limit)) << '\n';
  if (r.expected_e1) os << "E_1 vs fine homology: " << (r.e1_matches() ? "match" : "MISMATCH") << '\n';
  if (r.expected_limit) {
    os << "coarse homology totals:" << h_totals_text(collapse_h(*r.expected_limit)) << '\n';
    os << "E_inf vs coarse homology: " << (r.limit_matches() ? "match" : "MISMATCH") << '\n';
  }
  return os.str();
}

}  // namespace mkh
