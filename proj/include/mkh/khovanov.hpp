#pragma once

// The Khovanov cube of a diagram as a based complex over Q, with the
// homological, quantum, puncture (g^Sigma) and curve-class (Phi) degrees
// attached to every enhanced state.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mkh/diagram.hpp"
#include "mkh/exactalg.hpp"

namespace mkh {

enum class Label { plus, minus };

char label_char(Label l);

// Sign of the cube edge s -> s_prime: (-1)^(number of 1s before the flipped
// coordinate). Throws std::invalid_argument unless the vertices differ in
// exactly one coordinate, 0 -> 1.
int edge_sign(const std::vector<int>& s, const std::vector<int>& s_prime);

// Multiplication m: V (x) V -> V. nullopt is the zero map (v- (x) v- -> 0).
std::optional<Label> merge_action(Label first, Label second);
// Comultiplication Delta: V -> V (x) V as a list of summands.
std::vector<std::pair<Label, Label>> split_action(Label l);

struct Generator {
  std::uint32_t vertex = 0;  // bit i = resolution of crossing i
  std::vector<Label> labels;  // one per circle of resolve(d, vertex)
  MultiDegree degree;

  std::vector<int> vertex_vector(std::size_t crossings) const;
  std::string label_string() const;
};

// Basis order: by |S|, then by the vertex read as a binary number with
// crossing 1 as least significant bit, then by labels counting up in binary
// from all-plus with the first circle as most significant digit.
struct KhovanovComplex {
  BasedComplex complex;
  std::vector<Generator> generators;
  CrossingSigns signs;
  int n_punctures = 0;
};

// Throws ValidationError when an edge of the cube is neither a merge nor a
// split (possible only for non-planar input).
KhovanovComplex build_complex(const Diagram& d);

MultiDegree state_degree(const Resolution& r, const std::vector<Label>& labels,
                         const CrossingSigns& signs, int n_punctures);

struct ApsGradings {
  int I = 0;
  int J = 0;
  int tau = 0;
  Phi psi;
};

// The original Asaeda-Przytycki-Sikora gradings of an enhanced state.
ApsGradings aps_original_gradings(const Generator& g, const Diagram& d);

// (source, target, coefficient) triples in basis order.
std::string dump_differential(const KhovanovComplex& kc);

}  // namespace mkh
