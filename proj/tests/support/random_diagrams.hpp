#pragma once

// Random diagrams for property and invariance tests.

#include <random>
#include <vector>

#include "mkh/diagram.hpp"

namespace mkh::testing {

using Rng = std::mt19937_64;

// Closure of a braid word; letter +i / -i is sigma_i^{+1} / sigma_i^{-1}
// (1 <= i < strands). Strands that never cross become free loops.
Diagram braid_closure(const std::vector<int>& word, int strands, int n_punctures = 0);

// Same, with puncture j placed in the closing region between strands
// gaps[j] - 1 and gaps[j] (gap 0 is the braid axis). Its ray leaves
// outwards across the closing arcs, so it never meets the braid box and
// braid relations inside the box are Reidemeister moves away from the
// punctures.
Diagram braid_closure_with_gaps(const std::vector<int>& word, int strands, const std::vector<int>& gaps);

// A braid word with one sigma_i sigma_{i+1} sigma_i block (all letters of
// one sign), and the word with that block replaced by
// sigma_{i+1} sigma_i sigma_{i+1}: the two closures differ by one R3 move.
std::pair<std::vector<int>, std::vector<int>> random_r3_words(Rng& rng, int strands, int extra);

// Places n punctures in faces of the projection (one face is chosen as the
// outside) and records, per arc, how often each puncture's ray crosses it.
// Free loops are redrawn around the punctures of a random face.
Diagram place_punctures(const Diagram& d, int n, Rng& rng);

Diagram random_braid_closure(Rng& rng, int max_crossings, int max_strands, int n_punctures);

// Random braid closure with up to max_crossings crossings, random punctures
// and occasionally a free loop.
Diagram random_diagram(Rng& rng, int max_crossings, int max_punctures);

// Applies `count` random R1 / R2 moves.
Diagram random_moves(const Diagram& d, Rng& rng, int count);

}  // namespace mkh::testing
