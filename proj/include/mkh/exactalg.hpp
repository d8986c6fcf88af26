#pragma once

// Exact linear algebra over Q and finite based chain complexes.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace mkh {

using Rational = mpq_class;

// Sorted by index, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // Adds v to entry (r, c); entries that cancel to zero are erased.
  void add(std::size_t r, std::size_t c, const Rational& v);
  void set(std::size_t r, std::size_t c, const Rational& v);
  Rational get(std::size_t r, std::size_t c) const;

  const std::map<std::pair<std::size_t, std::size_t>, Rational>& entries() const {
    return entries_;
  }
  std::size_t nonzeros() const { return entries_.size(); }

  std::vector<SparseVector> row_vectors() const;
  std::vector<SparseVector> column_vectors() const;

  SparseVector apply(const SparseVector& x) const;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_;
  std::size_t cols_;
  std::map<std::pair<std::size_t, std::size_t>, Rational> entries_;
};

// Incremental row echelon form. Leading positions follow `order`, a
// permutation of the ambient coordinates (identity when empty).
class Echelon {
 public:
  explicit Echelon(std::size_t dim, std::vector<std::size_t> order = {});

  // Reduces v against the basis and keeps it when independent.
  bool insert(SparseVector v);
  std::size_t rank() const { return pivots_.size(); }
  bool contains(SparseVector v) const;

  // Fully reduced basis rows keyed by pivot coordinate.
  std::map<std::size_t, SparseVector> reduced_rows() const;

 private:
  SparseVector reduce(SparseVector v) const;
  std::size_t lead(const SparseVector& v) const;

  std::size_t dim_;
  std::vector<std::size_t> rank_of_;  // coordinate -> position in order
  std::map<std::size_t, SparseVector> pivots_;  // position in order -> row
};

std::size_t rank(const SparseMatrix& m);
std::size_t span_dimension(const std::vector<SparseVector>& vectors, std::size_t dim);
// Basis of {x : m x = 0}.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

SparseVector axpy(const Rational& a, const SparseVector& x, const SparseVector& y);

// ---------------------------------------------------------------------------
// Multigradings

// Sorted, 1-based puncture indices.
using PunctureSet = std::vector<int>;
// Finite formal sum of nonempty puncture sets; never stores a zero coefficient.
using Phi = std::map<PunctureSet, int>;

void phi_add(Phi& phi, const PunctureSet& set, int coefficient);
int epsilon(const Phi& phi);
int epsilon(const std::vector<int>& v);
std::string format_phi(const Phi& phi);
std::string format_set(const PunctureSet& set);

struct MultiDegree {
  int h = 0;
  int q = 0;
  std::vector<int> gsigma;
  Phi phi;

  bool operator==(const MultiDegree&) const = default;
};

// Product order on Z^n.
bool product_leq(const std::vector<int>& a, const std::vector<int>& b);
// a ⊴ b iff a == b or epsilon(a) < epsilon(b).
bool phi_leq(const Phi& a, const Phi& b);

struct DifferentialEntry {
  std::size_t target;
  Rational coefficient;
};

class DegreeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FiltrationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Finite based complex over Q. Generator i has degree degrees[i]; the
// differential of generator i is the sparse combination differential[i].
class BasedComplex {
 public:
  BasedComplex() = default;
  BasedComplex(std::vector<MultiDegree> degrees,
               std::vector<std::vector<DifferentialEntry>> differential);

  std::size_t size() const { return degrees_.size(); }
  const MultiDegree& degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<MultiDegree>& degrees() const { return degrees_; }
  const std::vector<DifferentialEntry>& differential(std::size_t i) const {
    return differential_[i];
  }
  std::size_t entry_count() const;

  // Throws DegreeError unless every entry raises h by one and preserves q.
  void check_degrees() const;
  bool d_squared_is_zero() const;

  BasedComplex with_degrees(std::vector<MultiDegree> degrees) const;

 private:
  std::vector<MultiDegree> degrees_;
  std::vector<std::vector<DifferentialEntry>> differential_;
};

// Keeps the differential entries whose grade is preserved. Any entry whose
// target grade is not <= the source grade throws FiltrationError.
template <class GradeFn, class Leq>
BasedComplex associated_graded(const BasedComplex& c, GradeFn grade, Leq leq) {
  using Grade = std::decay_t<std::invoke_result_t<GradeFn, const MultiDegree&>>;
  std::vector<Grade> grades;
  grades.reserve(c.size());
  for (const auto& md : c.degrees()) grades.push_back(grade(md));
  std::vector<std::vector<DifferentialEntry>> kept(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (const auto& e : c.differential(i)) {
      if (grades[e.target] == grades[i]) {
        kept[i].push_back(e);
      } else if (!leq(grades[e.target], grades[i])) {
        throw FiltrationError("differential entry " + std::to_string(i) + " -> " +
                              std::to_string(e.target) + " raises the filtration grade");
      }
    }
  }
  return BasedComplex(c.degrees(), std::move(kept));
}

// Homology ranks per (h, block) where blocks[i] identifies the block of
// generator i. Differential entries must stay inside one block.
std::map<std::pair<int, std::size_t>, std::size_t> homology_ranks_by_block(
    const BasedComplex& c, const std::vector<std::size_t>& blocks);

// Homology ranks keyed by (h, key(degree)). Only nonzero ranks are returned.
template <class KeyFn>
auto homology_ranks(const BasedComplex& c, KeyFn key) {
  using Key = std::decay_t<std::invoke_result_t<KeyFn, const MultiDegree&>>;
  std::map<Key, std::size_t> ids;
  std::vector<Key> keys;
  std::vector<std::size_t> blocks;
  blocks.reserve(c.size());
  for (const auto& md : c.degrees()) {
    auto k = key(md);
    auto [it, fresh] = ids.emplace(k, keys.size());
    if (fresh) keys.push_back(std::move(k));
    blocks.push_back(it->second);
  }
  std::map<std::pair<int, Key>, std::size_t> out;
  for (const auto& [hb, r] : homology_ranks_by_block(c, blocks)) {
    out.emplace(std::pair<int, Key>{hb.first, keys[hb.second]}, r);
  }
  return out;
}

}  // namespace mkh
