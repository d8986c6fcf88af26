#pragma once

// Link diagrams in an n-punctured disk, given as PD codes plus per-arc
// counts of intersections with one fixed ray from each puncture.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mkh {

using ArcId = int;
// 0/1 per puncture.
using EnclosureVector = std::vector<int>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// PD crossing: slot 0 is the incoming under-strand, slots 1..3 follow
// counterclockwise.
struct Crossing {
  std::array<ArcId, 4> arcs{};
  bool operator==(const Crossing&) const = default;
};

// A slot of a crossing: one end of an arc.
struct ArcEnd {
  std::size_t crossing = 0;
  int slot = 0;
  bool operator==(const ArcEnd&) const = default;
  auto operator<=>(const ArcEnd&) const = default;
};

class Diagram {
 public:
  Diagram() = default;
  // Validates and fills omitted ray vectors with zeros. Throws ValidationError.
  Diagram(int n_punctures, std::vector<Crossing> crossings,
          std::map<ArcId, std::vector<int>> arc_rays = {},
          std::vector<EnclosureVector> free_loops = {});

  int n_punctures() const { return n_punctures_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  const std::map<ArcId, std::vector<int>>& arc_rays() const { return arc_rays_; }
  const std::vector<int>& rays(ArcId arc) const;
  const std::vector<EnclosureVector>& free_loops() const { return free_loops_; }

  std::vector<ArcId> arcs() const;
  bool has_arc(ArcId arc) const { return arc_rays_.count(arc) > 0; }
  ArcId max_arc() const;

  // Both ends of an arc, in crossing order.
  const std::array<ArcEnd, 2>& ends(ArcId arc) const { return ends_.at(arc); }
  ArcEnd other_end(ArcId arc, const ArcEnd& end) const;
  ArcId arc_at(const ArcEnd& end) const { return crossings_[end.crossing].arcs[end.slot]; }

  // Orientation: the end through which each arc enters its head crossing.
  const ArcEnd& head(ArcId arc) const { return head_.at(arc); }
  ArcEnd tail(ArcId arc) const { return other_end(arc, head(arc)); }
  // +1 or -1.
  int sign(std::size_t crossing) const { return signs_[crossing]; }

  bool operator==(const Diagram& other) const;

 private:
  void validate_and_index();
  void orient();
  void check_planar() const;

  int n_punctures_ = 0;
  std::vector<Crossing> crossings_;
  std::map<ArcId, std::vector<int>> arc_rays_;
  std::vector<EnclosureVector> free_loops_;

  std::map<ArcId, std::array<ArcEnd, 2>> ends_;
  std::map<ArcId, ArcEnd> head_;
  std::vector<int> signs_;
};

Diagram parse_diagram(std::string_view text);
std::string emit_diagram(const Diagram& d);

struct CrossingSigns {
  int n_plus = 0;
  int n_minus = 0;
  int writhe = 0;
  bool operator==(const CrossingSigns&) const = default;
};

CrossingSigns crossing_signs(const Diagram& d);

// Slot pairs joined by a smoothing of crossing (a, b, c, d): the 0-smoothing
// joins a-b and c-d, the 1-smoothing joins a-d and b-c.
int smoothing_partner(int slot, int resolution);

struct Segment {
  ArcId arc = 0;
  bool forward = true;  // traversed tail -> head
  bool operator==(const Segment&) const = default;
};

struct Circle {
  std::vector<Segment> segments;  // empty for free loops
  EnclosureVector enclosure;
  std::optional<std::size_t> free_loop;  // index into Diagram::free_loops
  bool operator==(const Circle&) const = default;

  ArcId smallest_arc() const;
  bool trivial() const;
};

// Circles are sorted by smallest arc identifier, free loops last in file order.
struct Resolution {
  std::vector<int> choice;
  std::vector<Circle> circles;
  bool operator==(const Resolution&) const = default;

  std::optional<std::size_t> circle_of(ArcId arc) const;
};

Resolution resolve(const Diagram& d, const std::vector<int>& s);
// Bit i of `vertex` is the resolution of crossing i.
Resolution resolve(const Diagram& d, std::uint32_t vertex);

// Faces of the projection. A face is the cyclic list of arc ends from which
// its boundary leaves along an arc.
std::vector<std::vector<ArcEnd>> faces(const Diagram& d);
// Number of connected components of the 4-valent projection graph.
std::size_t graph_components(const Diagram& d);

// Reidemeister moves. New arcs receive identifiers above max_arc().
enum class Chirality { positive, negative };

// Adds a kink near the head of `arc`; all of the arc's ray crossings stay
// on the segment leading into the kink.
Diagram apply_r1(const Diagram& d, ArcId arc, Chirality chirality);
// Adds a kink to free loop `loop`, turning it into a one-crossing component.
Diagram apply_r1_free_loop(const Diagram& d, std::size_t loop, Chirality chirality);

// Slides arc1 over arc2 across the corner they share at a crossing, creating
// a bigon next to that crossing. Throws ValidationError when the arcs do not
// share a corner.
Diagram apply_r2(const Diagram& d, ArcId arc1, ArcId arc2);
// Slides free loop `over` across free loop `under`. The caller asserts that
// the two loops border a common region of the complement.
Diagram apply_r2_free_loops(const Diagram& d, std::size_t over, std::size_t under);

// Flips over/under at one crossing (changes the link, keeps the projection).
// If a component ends up passing over everywhere, its orientation is re-chosen.
Diagram change_crossing(const Diagram& d, std::size_t crossing);

}  // namespace mkh
