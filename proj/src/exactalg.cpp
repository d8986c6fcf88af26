#include "mkh/exactalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mkh {

void SparseMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix index out of range");
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  check(r, c);
  if (v == 0) return;
  auto [it, fresh] = entries_.emplace(std::pair{r, c}, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  check(r, c);
  if (v == 0) {
    entries_.erase({r, c});
  } else {
    entries_[{r, c}] = v;
  }
}

Rational SparseMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<SparseVector> rows(rows_);
  for (const auto& [rc, v] : entries_) rows[rc.first].emplace_back(rc.second, v);
  return rows;
}

std::vector<SparseVector> SparseMatrix::column_vectors() const {
  std::vector<SparseVector> cols(cols_);
  for (const auto& [rc, v] : entries_) cols[rc.second].emplace_back(rc.first, v);
  for (auto& col : cols) std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
  return cols;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  std::vector<Rational> dense(rows_);
  std::vector<bool> touched(rows_, false);
  std::map<std::size_t, Rational> xs(x.begin(), x.end());
  for (const auto& [rc, v] : entries_) {
    auto it = xs.find(rc.second);
    if (it == xs.end()) continue;
    dense[rc.first] += v * it->second;
    touched[rc.first] = true;
  }
  SparseVector out;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (touched[r] && dense[r] != 0) out.emplace_back(r, dense[r]);
  }
  return out;
}

SparseVector axpy(const Rational& a, const SparseVector& x, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      Rational v = a * x[i].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.push_back(y[j]);
      ++j;
    } else {
      Rational v = a * x[i].second + y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

Echelon::Echelon(std::size_t dim, std::vector<std::size_t> order) : dim_(dim), rank_of_(dim) {
  if (order.empty()) {
    std::iota(rank_of_.begin(), rank_of_.end(), std::size_t{0});
  } else {
    if (order.size() != dim) throw std::invalid_argument("Echelon order has wrong length");
    for (std::size_t pos = 0; pos < dim; ++pos) rank_of_[order[pos]] = pos;
  }
}

std::size_t Echelon::lead(const SparseVector& v) const {
  std::size_t best = dim_;
  for (const auto& [c, x] : v) best = std::min(best, rank_of_[c]);
  return best;
}

SparseVector Echelon::reduce(SparseVector v) const {
  while (!v.empty()) {
    std::size_t p = lead(v);
    auto it = pivots_.find(p);
    if (it == pivots_.end()) break;
    // Pivot rows are normalised to coefficient 1 at their pivot.
    Rational coeff;
    for (const auto& [c, x] : v) {
      if (rank_of_[c] == p) {
        coeff = x;
        break;
      }
    }
    v = axpy(-coeff, it->second, v);
  }
  return v;
}

bool Echelon::insert(SparseVector v) {
  for (const auto& [c, x] : v) {
    if (c >= dim_) throw std::out_of_range("Echelon vector index out of range");
  }
  v = reduce(std::move(v));
  if (v.empty()) return false;
  std::size_t p = lead(v);
  Rational inv;
  for (const auto& [c, x] : v) {
    if (rank_of_[c] == p) {
      inv = 1 / x;
      break;
    }
  }
  for (auto& [c, x] : v) x *= inv;
  pivots_.emplace(p, std::move(v));
  return true;
}

bool Echelon::contains(SparseVector v) const { return reduce(std::move(v)).empty(); }

std::map<std::size_t, SparseVector> Echelon::reduced_rows() const {
  std::map<std::size_t, SparseVector> done;
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    SparseVector row = it->second;
    for (;;) {
      bool changed = false;
      for (const auto& [c, x] : row) {
        std::size_t pos = rank_of_[c];
        if (pos == it->first) continue;
        auto other = done.find(pos);
        if (other == done.end()) continue;
        row = axpy(-x, other->second, row);
        changed = true;
        break;
      }
      if (!changed) break;
    }
    done.emplace(it->first, std::move(row));
  }
  std::map<std::size_t, SparseVector> by_coordinate;
  std::vector<std::size_t> coord_of(dim_);
  for (std::size_t c = 0; c < dim_; ++c) coord_of[rank_of_[c]] = c;
  for (auto& [pos, row] : done) by_coordinate.emplace(coord_of[pos], std::move(row));
  return by_coordinate;
}

namespace {

// Sparse columns first: the densest columns are pivoted last.
std::vector<std::size_t> density_order(const std::vector<SparseVector>& rows, std::size_t dim) {
  std::vector<std::size_t> count(dim, 0);
  for (const auto& r : rows) {
    for (const auto& [c, x] : r) ++count[c];
  }
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return count[a] < count[b]; });
  return order;
}

}  // namespace

std::size_t span_dimension(const std::vector<SparseVector>& vectors, std::size_t dim) {
  Echelon e(dim, density_order(vectors, dim));
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::size_t rank(const SparseMatrix& m) { return span_dimension(m.row_vectors(), m.cols()); }

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
  Echelon e(m.cols());
  for (auto& row : m.row_vectors()) e.insert(std::move(row));
  auto rows = e.reduced_rows();
  // free column -> entries of the pivot rows in that column
  std::map<std::size_t, std::map<std::size_t, Rational>> free;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (!rows.count(f)) free[f][f] = 1;
  }
  for (const auto& [pc, row] : rows) {
    for (const auto& [c, v] : row) {
      if (c != pc) free.at(c)[pc] = -v;
    }
  }
  std::vector<SparseVector> basis;
  basis.reserve(free.size());
  for (const auto& [f, x] : free) basis.emplace_back(x.begin(), x.end());
  return basis;
}

// ---------------------------------------------------------------------------

void phi_add(Phi& phi, const PunctureSet& set, int coefficient) {
  if (coefficient == 0 || set.empty()) return;
  auto [it, fresh] = phi.emplace(set, coefficient);
  if (!fresh) {
    it->second += coefficient;
    if (it->second == 0) phi.erase(it);
  }
}

int epsilon(const Phi& phi) {
  int s = 0;
  for (const auto& [set, c] : phi) s += c;
  return s;
}

int epsilon(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::string format_set(const PunctureSet& set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
  os << '}';
  return os.str();
}

std::string format_phi(const Phi& phi) {
  if (phi.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [set, c] : phi) {
    if (!first) os << ' ';
    first = false;
    os << format_set(set) << ':' << c;
  }
  return os.str();
}

bool product_leq(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool phi_leq(const Phi& a, const Phi& b) { return a == b || epsilon(a) < epsilon(b); }

// ---------------------------------------------------------------------------

BasedComplex::BasedComplex(std::vector<MultiDegree> degrees,
                           std::vector<std::vector<DifferentialEntry>> differential)
    : degrees_(std::move(degrees)), differential_(std::move(differential)) {
  if (differential_.size() != degrees_.size()) {
    throw std::invalid_argument("differential and degree lists differ in length");
  }
  for (auto& row : differential_) {
    for (const auto& e : row) {
      if (e.target >= degrees_.size()) throw std::out_of_range("differential target out of range");
    }
    std::erase_if(row, [](const DifferentialEntry& e) { return e.coefficient == 0; });
  }
}

std::size_t BasedComplex::entry_count() const {
  std::size_t n = 0;
  for (const auto& row : differential_) n += row.size();
  return n;
}

void BasedComplex::check_degrees() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : differential_[i]) {
      const auto& s = degrees_[i];
      const auto& t = degrees_[e.target];
      if (t.h != s.h + 1 || t.q != s.q) {
        throw DegreeError("differential entry " + std::to_string(i) + " -> " +
                          std::to_string(e.target) + " has (dh, dq) = (" +
                          std::to_string(t.h - s.h) + ", " + std::to_string(t.q - s.q) + ")");
      }
    }
  }
}

bool BasedComplex::d_squared_is_zero() const {
  for (std::size_t i = 0; i < size(); ++i) {
    std::map<std::size_t, Rational> acc;
    for (const auto& e : differential_[i]) {
      for (const auto& f : differential_[e.target]) acc[f.target] += e.coefficient * f.coefficient;
    }
    for (const auto& [t, v] : acc) {
      if (v != 0) return false;
    }
  }
  return true;
}

BasedComplex BasedComplex::with_degrees(std::vector<MultiDegree> degrees) const {
  return BasedComplex(std::move(degrees), differential_);
}

std::map<std::pair<int, std::size_t>, std::size_t> homology_ranks_by_block(
    const BasedComplex& c, const std::vector<std::size_t>& blocks) {
  if (blocks.size() != c.size()) throw std::invalid_argument("block list has wrong length");
  // Local index of every generator inside its (h, block) cell.
  std::map<std::pair<int, std::size_t>, std::size_t> cell_size;
  std::vector<std::size_t> local(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    local[i] = cell_size[{c.degree(i).h, blocks[i]}]++;
  }
  std::map<std::pair<int, std::size_t>, std::vector<SparseVector>> images;
  for (std::size_t i = 0; i < c.size(); ++i) {
    SparseVector img;
    for (const auto& e : c.differential(i)) {
      if (blocks[e.target] != blocks[i]) {
        throw DegreeError("differential entry " + std::to_string(i) + " -> " +
                          std::to_string(e.target) + " leaves its degree block");
      }
      if (c.degree(e.target).h != c.degree(i).h + 1) {
        throw DegreeError("differential entry " + std::to_string(i) + " -> " +
                          std::to_string(e.target) + " does not raise h by one");
      }
      img.emplace_back(local[e.target], e.coefficient);
    }
    std::sort(img.begin(), img.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Merge duplicate targets.
    SparseVector merged;
    for (auto& [t, v] : img) {
      if (!merged.empty() && merged.back().first == t) {
        merged.back().second += v;
      } else {
        merged.emplace_back(t, v);
      }
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0; });
    images[{c.degree(i).h, blocks[i]}].push_back(std::move(merged));
  }
  std::map<std::pair<int, std::size_t>, std::size_t> d_rank;
  for (const auto& [cell, vecs] : images) {
    auto target = cell_size.find({cell.first + 1, cell.second});
    std::size_t dim = target == cell_size.end() ? 0 : target->second;
    d_rank[cell] = dim == 0 ? 0 : span_dimension(vecs, dim);
  }
  std::map<std::pair<int, std::size_t>, std::size_t> out;
  for (const auto& [cell, dim] : cell_size) {
    std::size_t r_out = d_rank[cell];
    auto in = d_rank.find({cell.first - 1, cell.second});
    std::size_t r_in = in == d_rank.end() ? 0 : in->second;
    std::size_t h = dim - r_out - r_in;
    if (h) out[cell] = h;
  }
  return out;
}

}  // namespace mkh
