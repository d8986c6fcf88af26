#include "mkh/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mkh {

char label_char(Label l) { return l == Label::plus ? '+' : '-'; }

int edge_sign(const std::vector<int>& s, const std::vector<int>& s_prime) {
  if (s.size() != s_prime.size()) throw std::invalid_argument("cube vertices differ in length");
  std::optional<std::size_t> flipped;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == s_prime[i]) continue;
    if (flipped || s[i] != 0 || s_prime[i] != 1) {
      throw std::invalid_argument("cube vertices are not joined by a 0 -> 1 edge");
    }
    flipped = i;
  }
  if (!flipped) throw std::invalid_argument("cube vertices are equal");
  int ones = std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(*flipped), 0);
  return ones % 2 == 0 ? 1 : -1;
}

std::optional<Label> merge_action(Label first, Label second) {
  if (first == Label::plus && second == Label::plus) return Label::plus;
  if (first == Label::minus && second == Label::minus) return std::nullopt;
  return Label::minus;
}

std::vector<std::pair<Label, Label>> split_action(Label l) {
  if (l == Label::plus) return {{Label::plus, Label::minus}, {Label::minus, Label::plus}};
  return {{Label::minus, Label::minus}};
}

std::vector<int> Generator::vertex_vector(std::size_t crossings) const {
  std::vector<int> s(crossings);
  for (std::size_t i = 0; i < crossings; ++i) s[i] = (vertex >> i) & 1;
  return s;
}

std::string Generator::label_string() const {
  std::string out;
  for (Label l : labels) out += label_char(l);
  return out;
}

MultiDegree state_degree(const Resolution& r, const std::vector<Label>& labels,
                         const CrossingSigns& signs, int n_punctures) {
  MultiDegree md;
  const int ones = static_cast<int>(std::count(r.choice.begin(), r.choice.end(), 1));
  md.h = ones - signs.n_minus;
  int balance = 0;
  md.gsigma.assign(static_cast<std::size_t>(n_punctures), 0);
  for (std::size_t j = 0; j < r.circles.size(); ++j) {
    const int s = labels[j] == Label::plus ? 1 : -1;
    balance += s;
    PunctureSet set;
    for (int i = 0; i < n_punctures; ++i) {
      if (r.circles[j].enclosure[i]) {
        md.gsigma[i] += s;
        set.push_back(i + 1);
      }
    }
    phi_add(md.phi, set, s);
  }
  md.q = balance + md.h + signs.writhe;
  return md;
}

namespace {

std::vector<Label> labels_of(std::size_t index, std::size_t circles) {
  std::vector<Label> out(circles);
  for (std::size_t j = 0; j < circles; ++j) {
    out[j] = (index >> (circles - 1 - j)) & 1 ? Label::minus : Label::plus;
  }
  return out;
}

std::size_t index_of(const std::vector<Label>& labels) {
  std::size_t idx = 0;
  for (Label l : labels) idx = (idx << 1) | (l == Label::minus ? 1 : 0);
  return idx;
}

struct VertexData {
  Resolution resolution;
  std::vector<std::size_t> circle_of_arc;  // indexed by arc id
  std::size_t offset = 0;
};

}  // namespace

KhovanovComplex build_complex(const Diagram& d) {
  const std::size_t n = d.crossing_count();
  if (n > 24) throw ValidationError("too many crossings for the cube of resolutions");
  const std::uint32_t count = std::uint32_t{1} << n;
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });

  KhovanovComplex kc;
  kc.signs = crossing_signs(d);
  kc.n_punctures = d.n_punctures();

  std::vector<VertexData> vdata(count);
  const auto max_arc = static_cast<std::size_t>(d.max_arc());
  std::size_t total = 0;
  for (std::uint32_t v : order) {
    auto& vd = vdata[v];
    vd.resolution = resolve(d, v);
    vd.circle_of_arc.assign(max_arc + 1, 0);
    for (std::size_t c = 0; c < vd.resolution.circles.size(); ++c) {
      for (const auto& seg : vd.resolution.circles[c].segments) vd.circle_of_arc[seg.arc] = c;
    }
    vd.offset = total;
    total += std::size_t{1} << vd.resolution.circles.size();
  }

  std::vector<MultiDegree> degrees;
  degrees.reserve(total);
  kc.generators.reserve(total);
  for (std::uint32_t v : order) {
    const auto& r = vdata[v].resolution;
    const std::size_t k = r.circles.size();
    for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
      Generator g;
      g.vertex = v;
      g.labels = labels_of(idx, k);
      g.degree = state_degree(r, g.labels, kc.signs, d.n_punctures());
      degrees.push_back(g.degree);
      kc.generators.push_back(std::move(g));
    }
  }

  std::vector<std::vector<DifferentialEntry>> diff(total);
  for (std::uint32_t v : order) {
    const auto& src = vdata[v];
    const std::size_t k = src.resolution.circles.size();
    for (std::size_t i = 0; i < n; ++i) {
      if ((v >> i) & 1) continue;
      const std::uint32_t w = v | (std::uint32_t{1} << i);
      const auto& dst = vdata[w];
      const std::size_t k2 = dst.resolution.circles.size();
      const int sign = std::popcount(v & ((std::uint32_t{1} << i) - 1)) % 2 == 0 ? 1 : -1;

      std::vector<std::size_t> touched_src, touched_dst;
      for (ArcId a : d.crossings()[i].arcs) {
        touched_src.push_back(src.circle_of_arc[a]);
        touched_dst.push_back(dst.circle_of_arc[a]);
      }
      std::sort(touched_src.begin(), touched_src.end());
      touched_src.erase(std::unique(touched_src.begin(), touched_src.end()), touched_src.end());
      std::sort(touched_dst.begin(), touched_dst.end());
      touched_dst.erase(std::unique(touched_dst.begin(), touched_dst.end()), touched_dst.end());
      const bool merge = touched_src.size() == 2 && touched_dst.size() == 1;
      const bool split = touched_src.size() == 1 && touched_dst.size() == 2;
      if (!merge && !split) {
        throw ValidationError("cube edge at crossing " + std::to_string(i + 1) +
                              " is neither a merge nor a split");
      }
      // Untouched circles keep their identity across the edge.
      std::vector<std::optional<std::size_t>> preimage(k2);
      for (std::size_t c = 0; c < k; ++c) {
        if (std::find(touched_src.begin(), touched_src.end(), c) != touched_src.end()) continue;
        const auto& circle = src.resolution.circles[c];
        std::size_t image = circle.free_loop
                                ? k2 - (d.free_loops().size() - *circle.free_loop)
                                : dst.circle_of_arc[circle.segments.front().arc];
        preimage[image] = c;
      }

      for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
        const std::size_t source = src.offset + idx;
        const auto& labels = kc.generators[source].labels;
        std::vector<Label> out(k2);
        for (std::size_t c2 = 0; c2 < k2; ++c2) {
          if (preimage[c2]) out[c2] = labels[*preimage[c2]];
        }
        if (merge) {
          auto m = merge_action(labels[touched_src[0]], labels[touched_src[1]]);
          if (!m) continue;
          out[touched_dst[0]] = *m;
          diff[source].push_back({dst.offset + index_of(out), Rational(sign)});
        } else {
          for (const auto& [first, second] : split_action(labels[touched_src[0]])) {
            out[touched_dst[0]] = first;
            out[touched_dst[1]] = second;
            diff[source].push_back({dst.offset + index_of(out), Rational(sign)});
          }
        }
      }
    }
  }
  kc.complex = BasedComplex(std::move(degrees), std::move(diff));
  return kc;
}

ApsGradings aps_original_gradings(const Generator& g, const Diagram& d) {
  const auto r = resolve(d, g.vertex);
  if (r.circles.size() != g.labels.size()) {
    throw std::invalid_argument("generator does not belong to this diagram");
  }
  ApsGradings out;
  const int n = static_cast<int>(d.crossing_count());
  const int ones = std::popcount(g.vertex);
  out.I = (n - ones) - ones;
  for (std::size_t j = 0; j < r.circles.size(); ++j) {
    if (!r.circles[j].trivial()) continue;
    out.tau += g.labels[j] == Label::minus ? 1 : -1;
  }
  out.J = out.I + 2 * out.tau;
  for (const auto& [set, c] : g.degree.phi) out.psi[set] = -c;
  return out;
}

std::string dump_differential(const KhovanovComplex& kc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < kc.complex.size(); ++i) {
    for (const auto& e : kc.complex.differential(i)) {
      os << i << ' ' << e.target << ' ' << e.coefficient << '\n';
    }
  }
  return os.str();
}

}  // namespace mkh
