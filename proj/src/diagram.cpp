#include "mkh/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace mkh {

namespace {

std::string arc_name(ArcId a) { return "arc " + std::to_string(a); }

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

}  // namespace

Diagram::Diagram(int n_punctures, std::vector<Crossing> crossings,
                 std::map<ArcId, std::vector<int>> arc_rays,
                 std::vector<EnclosureVector> free_loops)
    : n_punctures_(n_punctures),
      crossings_(std::move(crossings)),
      arc_rays_(std::move(arc_rays)),
      free_loops_(std::move(free_loops)) {
  validate_and_index();
  orient();
  check_planar();
}

void Diagram::validate_and_index() {
  if (n_punctures_ < 0) throw ValidationError("puncture count must be nonnegative");
  if (crossings_.size() > 30) throw ValidationError("diagrams are limited to 30 crossings");
  std::map<ArcId, std::vector<ArcEnd>> seen;
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    for (int s = 0; s < 4; ++s) {
      ArcId a = crossings_[i].arcs[s];
      if (a <= 0) throw ValidationError("arc identifiers must be positive, got " + std::to_string(a));
      seen[a].push_back({i, s});
    }
  }
  for (const auto& [a, ends] : seen) {
    if (ends.size() != 2) {
      throw ValidationError("open diagram: " + arc_name(a) + " occurs " +
                            std::to_string(ends.size()) + " times");
    }
    ends_[a] = {ends[0], ends[1]};
  }
  for (const auto& [a, rays] : arc_rays_) {
    if (!seen.count(a)) throw ValidationError("ray data given for unknown " + arc_name(a));
    if (rays.size() != static_cast<std::size_t>(n_punctures_)) {
      throw ValidationError("ray vector of " + arc_name(a) + " has length " +
                            std::to_string(rays.size()) + ", expected " +
                            std::to_string(n_punctures_));
    }
    for (int k : rays) {
      if (k < 0) throw ValidationError("negative ray count on " + arc_name(a));
    }
  }
  for (const auto& [a, ends] : seen) {
    arc_rays_.try_emplace(a, std::vector<int>(n_punctures_, 0));
  }
  for (const auto& loop : free_loops_) {
    if (loop.size() != static_cast<std::size_t>(n_punctures_)) {
      throw ValidationError("free loop parity vector has length " + std::to_string(loop.size()) +
                            ", expected " + std::to_string(n_punctures_));
    }
    for (int e : loop) {
      if (e != 0 && e != 1) throw ValidationError("free loop parities must be 0 or 1");
    }
  }
}

ArcEnd Diagram::other_end(ArcId arc, const ArcEnd& end) const {
  const auto& e = ends_.at(arc);
  if (e[0] == end) return e[1];
  if (e[1] == end) return e[0];
  throw std::invalid_argument(arc_name(arc) + " does not end at the given slot");
}

void Diagram::orient() {
  std::vector<int> over_in(crossings_.size(), -1);
  auto walk = [&](ArcId start, ArcEnd start_head) {
    ArcId arc = start;
    ArcEnd h = start_head;
    for (;;) {
      if (auto it = head_.find(arc); it != head_.end()) {
        if (it->second != h) {
          throw ValidationError("inconsistent strand orientation along " + arc_name(arc));
        }
        return;
      }
      if (h.slot == 2) {
        throw ValidationError("inconsistent strand orientation: " + arc_name(arc) +
                              " enters a crossing through its outgoing under slot");
      }
      head_[arc] = h;
      if (h.slot == 1 || h.slot == 3) over_in[h.crossing] = h.slot;
      ArcEnd out{h.crossing, (h.slot + 2) % 4};
      ArcId next = arc_at(out);
      arc = next;
      h = other_end(next, out);
    }
  };
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    ArcId a = crossings_[i].arcs[0];
    if (!head_.count(a)) walk(a, ArcEnd{i, 0});
  }
  // Components that only ever pass over: orientation does not affect n+ or
  // n-, pick one deterministically.
  for (const auto& [a, e] : ends_) {
    if (head_.count(a)) continue;
    ArcEnd h = e[0];
    if (e[0].slot != 3 && e[1].slot == 3) h = e[1];
    walk(a, h);
  }
  signs_.assign(crossings_.size(), 0);
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    if (over_in[i] < 0) throw ValidationError("crossing " + std::to_string(i + 1) + " has no over-strand");
    signs_[i] = over_in[i] == 3 ? 1 : -1;
  }
}

void Diagram::check_planar() const {
  if (crossings_.empty()) return;
  DisjointSets comps(crossings_.size());
  for (const auto& [a, e] : ends_) comps.unite(e[0].crossing, e[1].crossing);
  std::map<std::size_t, long> euler;  // V - E + F per component
  for (std::size_t i = 0; i < crossings_.size(); ++i) euler[comps.find(i)] += 1 - 2;
  for (const auto& face : faces(*this)) euler[comps.find(face.front().crossing)] += 1;
  for (const auto& [root, chi] : euler) {
    if (chi != 2) throw ValidationError("non-planar PD code (component Euler characteristic " +
                                        std::to_string(chi) + ")");
  }
}

const std::vector<int>& Diagram::rays(ArcId arc) const {
  auto it = arc_rays_.find(arc);
  if (it == arc_rays_.end()) throw std::out_of_range("unknown " + arc_name(arc));
  return it->second;
}

std::vector<ArcId> Diagram::arcs() const {
  std::vector<ArcId> out;
  out.reserve(ends_.size());
  for (const auto& [a, e] : ends_) out.push_back(a);
  return out;
}

ArcId Diagram::max_arc() const { return ends_.empty() ? 0 : ends_.rbegin()->first; }

bool Diagram::operator==(const Diagram& other) const {
  return n_punctures_ == other.n_punctures_ && crossings_ == other.crossings_ &&
         arc_rays_ == other.arc_rays_ && free_loops_ == other.free_loops_;
}

// ---------------------------------------------------------------------------

Diagram parse_diagram(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed diagram document: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError("diagram document must be a JSON object");
    if (!doc.contains("punctures")) throw ParseError("missing \"punctures\"");
    int n = doc.at("punctures").get<int>();
    std::vector<Crossing> crossings;
    for (const auto& c : doc.value("crossings", nlohmann::json::array())) {
      if (!c.is_array() || c.size() != 4) throw ParseError("each crossing must list four arcs");
      Crossing x;
      for (int s = 0; s < 4; ++s) x.arcs[s] = c.at(s).get<ArcId>();
      crossings.push_back(x);
    }
    std::map<ArcId, std::vector<int>> rays;
    if (doc.contains("arc_rays")) {
      const auto& obj = doc.at("arc_rays");
      if (!obj.is_object()) throw ParseError("\"arc_rays\" must be an object");
      for (const auto& [key, value] : obj.items()) {
        std::size_t used = 0;
        ArcId a = 0;
        try {
          a = std::stoi(key, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != key.size()) throw ParseError("arc_rays key \"" + key + "\" is not an integer");
        rays[a] = value.get<std::vector<int>>();
      }
    }
    std::vector<EnclosureVector> loops;
    if (doc.contains("free_loops")) loops = doc.at("free_loops").get<std::vector<EnclosureVector>>();
    return Diagram(n, std::move(crossings), std::move(rays), std::move(loops));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed diagram document: ") + e.what());
  }
}

std::string emit_diagram(const Diagram& d) {
  nlohmann::ordered_json doc;
  doc["punctures"] = d.n_punctures();
  auto crossings = nlohmann::ordered_json::array();
  for (const auto& c : d.crossings()) crossings.push_back(c.arcs);
  doc["crossings"] = crossings;
  nlohmann::ordered_json rays = nlohmann::ordered_json::object();
  for (const auto& [a, r] : d.arc_rays()) {
    if (std::any_of(r.begin(), r.end(), [](int k) { return k != 0; })) rays[std::to_string(a)] = r;
  }
  doc["arc_rays"] = rays;
  doc["free_loops"] = d.free_loops();
  return doc.dump(2) + "\n";
}

CrossingSigns crossing_signs(const Diagram& d) {
  CrossingSigns out;
  for (std::size_t i = 0; i < d.crossing_count(); ++i) {
    (d.sign(i) > 0 ? out.n_plus : out.n_minus) += 1;
  }
  out.writhe = out.n_plus - out.n_minus;
  return out;
}

// ---------------------------------------------------------------------------

int smoothing_partner(int slot, int resolution) {
  static constexpr int zero[4] = {1, 0, 3, 2};
  static constexpr int one[4] = {3, 2, 1, 0};
  return resolution == 0 ? zero[slot] : one[slot];
}

ArcId Circle::smallest_arc() const {
  ArcId best = 0;
  for (const auto& s : segments) {
    if (best == 0 || s.arc < best) best = s.arc;
  }
  return best;
}

bool Circle::trivial() const {
  return std::all_of(enclosure.begin(), enclosure.end(), [](int e) { return e == 0; });
}

std::optional<std::size_t> Resolution::circle_of(ArcId arc) const {
  for (std::size_t i = 0; i < circles.size(); ++i) {
    for (const auto& s : circles[i].segments) {
      if (s.arc == arc) return i;
    }
  }
  return std::nullopt;
}

Resolution resolve(const Diagram& d, const std::vector<int>& s) {
  if (s.size() != d.crossing_count()) {
    throw std::invalid_argument("resolution vector has length " + std::to_string(s.size()) +
                                ", expected " + std::to_string(d.crossing_count()));
  }
  std::uint32_t vertex = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0 && s[i] != 1) throw std::invalid_argument("resolution entries must be 0 or 1");
    if (s[i]) vertex |= std::uint32_t{1} << i;
  }
  return resolve(d, vertex);
}

Resolution resolve(const Diagram& d, std::uint32_t vertex) {
  Resolution r;
  r.choice.resize(d.crossing_count());
  for (std::size_t i = 0; i < d.crossing_count(); ++i) r.choice[i] = (vertex >> i) & 1;
  const auto n = static_cast<std::size_t>(d.n_punctures());
  std::set<ArcId> visited;
  for (ArcId start : d.arcs()) {
    if (visited.count(start)) continue;
    Circle circle;
    std::vector<int> total(n, 0);
    ArcId arc = start;
    bool forward = true;
    do {
      visited.insert(arc);
      circle.segments.push_back({arc, forward});
      const auto& rays = d.rays(arc);
      for (std::size_t i = 0; i < n; ++i) total[i] += rays[i];
      ArcEnd arrive = forward ? d.head(arc) : d.tail(arc);
      ArcEnd leave{arrive.crossing, smoothing_partner(arrive.slot, r.choice[arrive.crossing])};
      arc = d.arc_at(leave);
      forward = d.tail(arc) == leave;
    } while (!(arc == start && forward));
    circle.enclosure.resize(n);
    for (std::size_t i = 0; i < n; ++i) circle.enclosure[i] = total[i] % 2;
    r.circles.push_back(std::move(circle));
  }
  for (std::size_t k = 0; k < d.free_loops().size(); ++k) {
    r.circles.push_back(Circle{{}, d.free_loops()[k], k});
  }
  return r;
}

std::vector<std::vector<ArcEnd>> faces(const Diagram& d) {
  std::set<ArcEnd> used;
  std::vector<std::vector<ArcEnd>> out;
  for (std::size_t x = 0; x < d.crossing_count(); ++x) {
    for (int s = 0; s < 4; ++s) {
      ArcEnd start{x, s};
      if (used.count(start)) continue;
      std::vector<ArcEnd> face;
      ArcEnd cur = start;
      do {
        used.insert(cur);
        face.push_back(cur);
        ArcEnd arrive = d.other_end(d.arc_at(cur), cur);
        // Leave through the arm clockwise from the arrival arm.
        cur = ArcEnd{arrive.crossing, (arrive.slot + 3) % 4};
      } while (cur != start);
      out.push_back(std::move(face));
    }
  }
  return out;
}

std::size_t graph_components(const Diagram& d) {
  if (d.crossing_count() == 0) return 0;
  DisjointSets comps(d.crossing_count());
  for (ArcId a : d.arcs()) comps.unite(d.ends(a)[0].crossing, d.ends(a)[1].crossing);
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < d.crossing_count(); ++i) roots.insert(comps.find(i));
  return roots.size();
}

// ---------------------------------------------------------------------------

namespace {

void set_slot(std::vector<Crossing>& xs, const ArcEnd& e, ArcId a) { xs[e.crossing].arcs[e.slot] = a; }

}  // namespace

Diagram apply_r1(const Diagram& d, ArcId arc, Chirality chirality) {
  if (!d.has_arc(arc)) throw ValidationError("r1: unknown " + arc_name(arc));
  auto crossings = d.crossings();
  auto rays = d.arc_rays();
  const ArcId loop = d.max_arc() + 1;
  const ArcId out = d.max_arc() + 2;
  set_slot(crossings, d.head(arc), out);
  if (chirality == Chirality::negative) {
    crossings.push_back(Crossing{{arc, loop, loop, out}});
  } else {
    crossings.push_back(Crossing{{arc, out, loop, loop}});
  }
  rays[loop] = std::vector<int>(d.n_punctures(), 0);
  rays[out] = std::vector<int>(d.n_punctures(), 0);
  return Diagram(d.n_punctures(), std::move(crossings), std::move(rays), d.free_loops());
}

Diagram apply_r1_free_loop(const Diagram& d, std::size_t loop_index, Chirality chirality) {
  if (loop_index >= d.free_loops().size()) {
    throw ValidationError("r1: unknown free loop " + std::to_string(loop_index));
  }
  auto crossings = d.crossings();
  auto rays = d.arc_rays();
  auto loops = d.free_loops();
  const ArcId body = d.max_arc() + 1;
  const ArcId kink = d.max_arc() + 2;
  if (chirality == Chirality::negative) {
    crossings.push_back(Crossing{{body, kink, kink, body}});
  } else {
    crossings.push_back(Crossing{{body, body, kink, kink}});
  }
  rays[body] = loops[loop_index];
  rays[kink] = std::vector<int>(d.n_punctures(), 0);
  loops.erase(loops.begin() + static_cast<std::ptrdiff_t>(loop_index));
  return Diagram(d.n_punctures(), std::move(crossings), std::move(rays), std::move(loops));
}

Diagram apply_r2(const Diagram& d, ArcId arc1, ArcId arc2) {
  if (!d.has_arc(arc1)) throw ValidationError("r2: unknown " + arc_name(arc1));
  if (!d.has_arc(arc2)) throw ValidationError("r2: unknown " + arc_name(arc2));
  if (arc1 == arc2) throw ValidationError("r2: " + arc_name(arc1) + " cannot slide over itself");
  // Find a crossing where the two arcs occupy adjacent slots.
  std::optional<ArcEnd> e1, e2;
  for (const auto& a : d.ends(arc1)) {
    for (const auto& b : d.ends(arc2)) {
      if (a.crossing != b.crossing) continue;
      int diff = (a.slot - b.slot + 4) % 4;
      if ((diff == 1 || diff == 3) && !e1) {
        e1 = a;
        e2 = b;
      }
    }
  }
  if (!e1) {
    throw ValidationError("r2: " + arc_name(arc1) + " and " + arc_name(arc2) +
                          " do not share a corner of the diagram");
  }
  const bool arc1_ccw_of_arc2 = (e1->slot - e2->slot + 4) % 4 == 1;
  const bool arc2_outward = d.head(arc2) != *e2;

  auto crossings = d.crossings();
  auto rays = d.arc_rays();
  const ArcId base = d.max_arc();
  // arc1 -> a1 (near the corner), a2 (tip), arc1 (far part)
  // arc2 -> b1 (near the corner), b2 (between the new crossings), arc2 (far part)
  const ArcId a1 = base + 1, a2 = base + 2, a3 = arc1;
  const ArcId b1 = base + 3, b2 = base + 4, b3 = arc2;
  set_slot(crossings, *e1, a1);
  set_slot(crossings, *e2, b1);
  Crossing c1, c2;
  if (arc1_ccw_of_arc2) {
    if (arc2_outward) {
      c1 = {{b1, a2, b2, a1}};
      c2 = {{b2, a2, b3, a3}};
    } else {
      c1 = {{b2, a1, b1, a2}};
      c2 = {{b3, a3, b2, a2}};
    }
  } else {
    if (arc2_outward) {
      c1 = {{b1, a1, b2, a2}};
      c2 = {{b2, a3, b3, a2}};
    } else {
      c1 = {{b2, a2, b1, a1}};
      c2 = {{b3, a2, b2, a3}};
    }
  }
  crossings.push_back(c1);
  crossings.push_back(c2);
  for (ArcId a : {a1, a2, b1, b2}) rays[a] = std::vector<int>(d.n_punctures(), 0);
  return Diagram(d.n_punctures(), std::move(crossings), std::move(rays), d.free_loops());
}

Diagram apply_r2_free_loops(const Diagram& d, std::size_t over, std::size_t under) {
  const auto& loops_in = d.free_loops();
  if (over >= loops_in.size() || under >= loops_in.size() || over == under) {
    throw ValidationError("r2: free loops " + std::to_string(over) + " and " +
                          std::to_string(under) + " are not two distinct loops");
  }
  auto crossings = d.crossings();
  auto rays = d.arc_rays();
  const ArcId base = d.max_arc();
  const ArcId tip = base + 1, over_rest = base + 2, middle = base + 3, under_rest = base + 4;
  crossings.push_back(Crossing{{under_rest, tip, middle, over_rest}});
  crossings.push_back(Crossing{{middle, tip, under_rest, over_rest}});
  rays[tip] = std::vector<int>(d.n_punctures(), 0);
  rays[middle] = std::vector<int>(d.n_punctures(), 0);
  rays[over_rest] = loops_in[over];
  rays[under_rest] = loops_in[under];
  std::vector<EnclosureVector> loops;
  for (std::size_t k = 0; k < loops_in.size(); ++k) {
    if (k != over && k != under) loops.push_back(loops_in[k]);
  }
  return Diagram(d.n_punctures(), std::move(crossings), std::move(rays), std::move(loops));
}

Diagram change_crossing(const Diagram& d, std::size_t crossing) {
  if (crossing >= d.crossing_count()) throw ValidationError("no crossing " + std::to_string(crossing));
  auto crossings = d.crossings();
  const auto x = crossings[crossing].arcs;
  if (d.sign(crossing) > 0) {
    crossings[crossing] = Crossing{{x[3], x[0], x[1], x[2]}};
  } else {
    crossings[crossing] = Crossing{{x[1], x[2], x[3], x[0]}};
  }
  return Diagram(d.n_punctures(), std::move(crossings), d.arc_rays(), d.free_loops());
}

}  // namespace mkh
