// Reciprocal (pairwise-comparison) matrices, weight vectors, monomial
// similarities and the canonical block-perturbed form A_n(B).

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcm/scalar.hpp"

namespace pcm {

using Index = std::size_t;
using IndexSet = std::vector<Index>;

/// Positive weight vector. Entries are validated on construction.
template <Scalar T>
class WeightVector {
 public:
  WeightVector() = default;

  explicit WeightVector(std::vector<T> values) : values_(std::move(values)) {
    for (Index i = 0; i < values_.size(); ++i) {
      if (!(values_[i] > T(0))) {
        throw Error(Errc::non_positive_entry, "weight " + std::to_string(i + 1) + " is not positive");
      }
    }
  }

  WeightVector(std::initializer_list<T> values) : WeightVector(std::vector<T>(values)) {}

  Index size() const noexcept { return values_.size(); }
  const T& operator[](Index i) const { return values_[i]; }
  const std::vector<T>& values() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  /// w[K]
  WeightVector restrict_to(std::span<const Index> keep) const {
    std::vector<T> out;
    out.reserve(keep.size());
    for (Index k : keep) out.push_back(values_.at(k));
    return WeightVector(std::move(out));
  }

  /// w(i)
  WeightVector without(Index drop) const {
    std::vector<T> out;
    out.reserve(values_.size() - 1);
    for (Index i = 0; i < values_.size(); ++i) {
      if (i != drop) out.push_back(values_[i]);
    }
    return WeightVector(std::move(out));
  }

  WeightVector scaled(const T& c) const {
    std::vector<T> out(values_);
    for (auto& v : out) v *= c;
    return WeightVector(std::move(out));
  }

  /// Inserts `value` so that it lands at position `at`.
  WeightVector inserted(Index at, const T& value) const {
    std::vector<T> out(values_);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(at), value);
    return WeightVector(std::move(out));
  }

  WeightVector<double> to_double_vector() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(pcm::to_double(v));
    return WeightVector<double>(std::move(out));
  }

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.values_ == b.values_; }

 private:
  std::vector<T> values_;
};

template <Scalar T>
using Grid = std::vector<std::vector<T>>;

/// Positive square matrix with a_ii = 1 and a_ji = 1 / a_ij.
template <Scalar T>
class ReciprocalMatrix {
 public:
  /// Validates a square grid. On the float backend a_ji is normalized to
  /// exactly 1 / a_ij once it is within `tol.recip`.
  static ReciprocalMatrix validate(const Grid<T>& grid, const Tolerances& tol = {}) {
    const Index n = grid.size();
    if (n < 2) throw Error(Errc::bad_shape, "need n >= 2, got " + std::to_string(n));
    for (const auto& row : grid) {
      if (row.size() != n) throw Error(Errc::bad_shape, "grid is not square");
    }
    std::vector<T> data(n * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (!(grid[i][j] > T(0))) {
          throw Error(Errc::non_positive_entry,
                      "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is not positive");
        }
      }
    }
    for (Index i = 0; i < n; ++i) {
      if (!approx_equal(grid[i][i], T(1), tol.recip)) {
        throw Error(Errc::reciprocity_violation, "diagonal entry " + std::to_string(i + 1) + " is not 1");
      }
      data[i * n + i] = T(1);
      for (Index j = i + 1; j < n; ++j) {
        const T prod = grid[i][j] * grid[j][i];
        if (!approx_equal(prod, T(1), tol.recip)) {
          throw Error(Errc::reciprocity_violation, "a_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                       " * a_" + std::to_string(j + 1) + std::to_string(i + 1) +
                                                       " != 1");
        }
        data[i * n + j] = grid[i][j];
        data[j * n + i] = T(1) / grid[i][j];
      }
    }
    return ReciprocalMatrix(n, std::move(data));
  }

  /// Builds a matrix from its strict upper triangle, row by row.
  static ReciprocalMatrix from_upper(Index n, std::span<const T> upper) {
    if (upper.size() != n * (n - 1) / 2) throw Error(Errc::bad_shape, "upper triangle has wrong length");
    Grid<T> g(n, std::vector<T>(n, T(1)));
    Index k = 0;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        if (!(upper[k] > T(0))) throw Error(Errc::non_positive_entry, "upper entry is not positive");
        g[i][j] = upper[k];
        g[j][i] = T(1) / upper[k];
        ++k;
      }
    }
    return validate(g);
  }

  static ReciprocalMatrix ones(Index n) {
    if (n < 2) throw Error(Errc::bad_shape, "need n >= 2");
    return ReciprocalMatrix(n, std::vector<T>(n * n, T(1)));
  }

  /// The consistent matrix [w_i / w_j].
  static ReciprocalMatrix consistent_from(const WeightVector<T>& w) {
    const Index n = w.size();
    if (n < 2) throw Error(Errc::bad_shape, "need n >= 2");
    std::vector<T> data(n * n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) data[i * n + j] = i == j ? T(1) : T(w[i] / w[j]);
    }
    return ReciprocalMatrix(n, std::move(data));
  }

  /// A_n(B): B in the leading block, ones elsewhere.
  static ReciprocalMatrix block_perturbed(const ReciprocalMatrix& block, Index n) {
    const Index s = block.size();
    if (n < s) throw Error(Errc::bad_shape, "n must be at least the block size");
    if (n < 2) throw Error(Errc::bad_shape, "need n >= 2");
    std::vector<T> data(n * n, T(1));
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) data[i * n + j] = block(i, j);
    }
    return ReciprocalMatrix(n, std::move(data));
  }

  /// A_n(B) where B may be 1x1.
  static ReciprocalMatrix block_perturbed_or_ones(const std::vector<T>& block_data, Index s, Index n) {
    std::vector<T> data(n * n, T(1));
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) data[i * n + j] = block_data[i * s + j];
    }
    return ReciprocalMatrix(n, std::move(data));
  }

  Index size() const noexcept { return n_; }
  const T& operator()(Index i, Index j) const { return data_[i * n_ + j]; }
  const std::vector<T>& data() const noexcept { return data_; }

  /// A[K]. Requires |K| >= 2.
  ReciprocalMatrix principal(std::span<const Index> keep) const {
    const Index m = keep.size();
    if (m < 2) throw Error(Errc::bad_shape, "principal submatrix needs at least 2 indices");
    std::vector<T> data(m * m);
    for (Index a = 0; a < m; ++a) {
      for (Index b = 0; b < m; ++b) data[a * m + b] = (*this)(keep[a], keep[b]);
    }
    return ReciprocalMatrix(m, std::move(data));
  }

  /// A(i)
  ReciprocalMatrix without(Index drop) const {
    IndexSet keep;
    for (Index i = 0; i < n_; ++i) {
      if (i != drop) keep.push_back(i);
    }
    return principal(keep);
  }

  Grid<T> to_grid() const {
    Grid<T> g(n_, std::vector<T>(n_));
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < n_; ++j) g[i][j] = (*this)(i, j);
    }
    return g;
  }

  ReciprocalMatrix<double> to_double_matrix() const {
    Grid<double> g(n_, std::vector<double>(n_));
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < n_; ++j) g[i][j] = pcm::to_double((*this)(i, j));
    }
    return ReciprocalMatrix<double>::validate(g, Tolerances{.recip = 1e-9});
  }

  friend bool operator==(const ReciprocalMatrix& a, const ReciprocalMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  template <Scalar U>
  friend class ReciprocalMatrix;

  ReciprocalMatrix(Index n, std::vector<T> data) : n_(n), data_(std::move(data)) {}

  Index n_ = 0;
  std::vector<T> data_;
};

/// a_ij a_jk = a_ik for every triple (relative `tol.cons` on the float backend).
template <Scalar T>
bool is_consistent(const ReciprocalMatrix<T>& a, const Tolerances& tol = {}) {
  const Index n = a.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!approx_equal(T(a(i, j) * a(j, k)), a(i, k), tol.cons)) return false;
      }
    }
  }
  return true;
}

/// Number of inconsistent triples (i, j, k), i < j < k, each index takes part in.
template <Scalar T>
std::vector<Index> inconsistency_participation(const ReciprocalMatrix<T>& a, const Tolerances& tol = {}) {
  const Index n = a.size();
  std::vector<Index> count(n, 0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      for (Index k = j + 1; k < n; ++k) {
        if (!approx_equal(T(a(i, j) * a(j, k)), a(i, k), tol.cons)) {
          ++count[i];
          ++count[j];
          ++count[k];
        }
      }
    }
  }
  return count;
}

/// Monomial similarity X -> P D X D^{-1} P^T, stored as a positive diagonal
/// `diag` (indexed like X) and a permutation `perm`, where row i of the
/// result is row perm[i] of D X D^{-1}.
template <Scalar T>
struct MonomialSimilarity {
  std::vector<T> diag;
  std::vector<Index> perm;

  static MonomialSimilarity identity(Index n) {
    MonomialSimilarity m;
    m.diag.assign(n, T(1));
    m.perm.resize(n);
    std::iota(m.perm.begin(), m.perm.end(), Index{0});
    return m;
  }

  Index size() const noexcept { return diag.size(); }

  void check() const {
    if (perm.size() != diag.size()) throw Error(Errc::dimension_mismatch, "diag and perm sizes differ");
    std::vector<bool> seen(perm.size(), false);
    for (Index p : perm) {
      if (p >= perm.size() || seen[p]) throw Error(Errc::bad_shape, "perm is not a bijection");
      seen[p] = true;
    }
    for (const auto& d : diag) {
      if (!(d > T(0))) throw Error(Errc::non_positive_entry, "diagonal scaling must be positive");
    }
  }

  /// The similarity that undoes this one.
  MonomialSimilarity inverse() const {
    const Index n = size();
    MonomialSimilarity inv;
    inv.diag.resize(n);
    inv.perm.resize(n);
    // Result row i came from row perm[i], scaled by diag[perm[i]]. The
    // inverse sends position i back to perm[i] and divides that scale out.
    for (Index i = 0; i < n; ++i) {
      inv.perm[perm[i]] = i;
      inv.diag[i] = T(1) / diag[perm[i]];
    }
    return inv;
  }
};

template <Scalar T>
ReciprocalMatrix<T> apply_similarity(const ReciprocalMatrix<T>& a, const MonomialSimilarity<T>& m) {
  m.check();
  const Index n = a.size();
  if (m.size() != n) throw Error(Errc::dimension_mismatch, "similarity size does not match matrix");
  Grid<T> g(n, std::vector<T>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index p = m.perm[i], q = m.perm[j];
      g[i][j] = i == j ? T(1) : T(m.diag[p] * a(p, q) / m.diag[q]);
    }
  }
  return ReciprocalMatrix<T>::validate(g);
}

template <Scalar T>
WeightVector<T> transform_vector(const MonomialSimilarity<T>& m, const WeightVector<T>& w) {
  m.check();
  if (m.size() != w.size()) throw Error(Errc::dimension_mismatch, "similarity size does not match vector");
  std::vector<T> out(w.size());
  for (Index i = 0; i < w.size(); ++i) out[i] = m.diag[m.perm[i]] * w[m.perm[i]];
  return WeightVector<T>(std::move(out));
}

/// A = P^T D A_n(B) D^{-1} P: the block B of size s sits on the index set
/// `block` of the original matrix, and `back_map` carries A_n(B) back to it.
template <Scalar T>
struct BlockPerturbedForm {
  std::vector<T> block_data;  // s x s, row-major
  Index s = 0;
  Index n = 0;
  IndexSet block;             // original indices of the block, ascending
  MonomialSimilarity<T> back_map;

  /// B as a matrix; only meaningful for s >= 2.
  ReciprocalMatrix<T> block_matrix() const {
    Grid<T> g(s, std::vector<T>(s));
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) g[i][j] = block_data[i * s + j];
    }
    return ReciprocalMatrix<T>::validate(g);
  }

  /// A_n(B)
  ReciprocalMatrix<T> canonical() const { return ReciprocalMatrix<T>::block_perturbed_or_ones(block_data, s, n); }

  /// The original matrix, rebuilt from A_n(B) and the back map.
  ReciprocalMatrix<T> reconstruct() const { return apply_similarity(canonical(), back_map); }

  /// Maps a vector for the original matrix into canonical coordinates.
  WeightVector<T> to_canonical(const WeightVector<T>& w) const { return transform_vector(back_map.inverse(), w); }

  /// Maps a vector for A_n(B) back to the original matrix.
  WeightVector<T> from_canonical(const WeightVector<T>& w) const { return transform_vector(back_map, w); }
};

/// A form for A_n(B) itself: identity back map, block {0..s-1}.
template <Scalar T>
BlockPerturbedForm<T> canonical_form(const ReciprocalMatrix<T>& block, Index n) {
  if (n <= block.size()) throw Error(Errc::bad_shape, "need n > s");
  BlockPerturbedForm<T> f;
  f.s = block.size();
  f.n = n;
  f.block_data = block.data();
  f.block.resize(f.s);
  std::iota(f.block.begin(), f.block.end(), Index{0});
  f.back_map = MonomialSimilarity<T>::identity(n);
  return f;
}

/// Tests whether A is consistent outside the principal block K. On success
/// returns B (the block after diagonal rescaling) and the back map.
template <Scalar T>
std::optional<BlockPerturbedForm<T>> is_block_perturbation(const ReciprocalMatrix<T>& a, IndexSet k,
                                                           const Tolerances& tol = {}) {
  const Index n = a.size();
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  if (k.empty() || k.size() >= n) throw Error(Errc::bad_shape, "block must be nonempty and proper");
  if (k.back() >= n) throw Error(Errc::dimension_mismatch, "block index out of range");

  // order[pos] = original index placed at canonical position pos.
  IndexSet order = k;
  for (Index i = 0; i < n; ++i) {
    if (!std::binary_search(k.begin(), k.end(), i)) order.push_back(i);
  }
  const Index s = k.size();
  const Index ref = order[s];  // smallest index outside K

  // d_pos = a_{order[pos], ref}; canonical entry = a'_{pq} d_q / d_p.
  std::vector<T> d(n);
  for (Index p = 0; p < n; ++p) d[p] = a(order[p], ref);
  auto canon = [&](Index p, Index q) -> T { return a(order[p], order[q]) * d[q] / d[p]; };

  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      if (p < s && q < s) continue;
      if (!approx_equal(canon(p, q), T(1), tol.cons)) return std::nullopt;
    }
  }

  BlockPerturbedForm<T> f;
  f.s = s;
  f.n = n;
  f.block = k;
  f.block_data.resize(s * s);
  for (Index p = 0; p < s; ++p) {
    for (Index q = 0; q < s; ++q) f.block_data[p * s + q] = p == q ? T(1) : canon(p, q);
  }
  // Original index i sits at canonical position pos_of[i]; the back map
  // reads A_{ij} = d_{pos(i)} X_{pos(i)pos(j)} / d_{pos(j)}.
  f.back_map.diag = d;
  f.back_map.perm.resize(n);
  for (Index p = 0; p < n; ++p) f.back_map.perm[order[p]] = p;
  return f;
}

template <Scalar T>
struct MinimalBlock {
  IndexSet block;
  BlockPerturbedForm<T> form;
  bool minimal_guaranteed = true;
};

/// Smallest K (then lexicographically first) with A consistent outside K.
/// Exhaustive for n <= 8; greedy and flagged otherwise.
template <Scalar T>
std::optional<MinimalBlock<T>> detect_minimal_block(const ReciprocalMatrix<T>& a, const Tolerances& tol = {}) {
  const Index n = a.size();
  if (n <= 8) {
    for (Index size = 1; size < n; ++size) {
      // Lexicographic combinations of `size` indices out of n.
      IndexSet comb(size);
      std::iota(comb.begin(), comb.end(), Index{0});
      while (true) {
        if (auto f = is_block_perturbation(a, comb, tol)) return MinimalBlock<T>{comb, std::move(*f), true};
        Index pos = size;
        while (pos > 0 && comb[pos - 1] == n - size + pos - 1) --pos;
        if (pos == 0) break;
        ++comb[pos - 1];
        for (Index q = pos; q < size; ++q) comb[q] = comb[q - 1] + 1;
      }
    }
    return std::nullopt;
  }

  if (auto f = is_block_perturbation(a, IndexSet{0}, tol)) return MinimalBlock<T>{IndexSet{0}, std::move(*f), true};
  const auto score = inconsistency_participation(a, tol);
  IndexSet by_score(n);
  std::iota(by_score.begin(), by_score.end(), Index{0});
  std::stable_sort(by_score.begin(), by_score.end(), [&](Index x, Index y) { return score[x] > score[y]; });
  IndexSet k;
  for (Index next : by_score) {
    if (k.size() + 1 >= n) break;
    k.push_back(next);
    if (auto f = is_block_perturbation(a, k, tol)) {
      std::sort(k.begin(), k.end());
      return MinimalBlock<T>{k, std::move(*f), false};
    }
  }
  return std::nullopt;
}

/// Entry-wise geometric mean of the selected columns. Computed in double,
/// since roots of rationals are generally irrational.
template <Scalar T>
WeightVector<double> geometric_mean_vector(const ReciprocalMatrix<T>& a, std::span<const Index> cols) {
  if (cols.empty()) throw Error(Errc::empty_subset, "no columns selected");
  const Index n = a.size();
  std::vector<double> out(n, 0.0);
  if (cols.size() == 1) {
    if (cols[0] >= n) throw Error(Errc::dimension_mismatch, "column index out of range");
    for (Index i = 0; i < n; ++i) out[i] = pcm::to_double(a(i, cols[0]));
    return WeightVector<double>(std::move(out));
  }
  for (Index i = 0; i < n; ++i) {
    double log_sum = 0.0;
    for (Index c : cols) {
      if (c >= n) throw Error(Errc::dimension_mismatch, "column index out of range");
      log_sum += std::log(pcm::to_double(a(i, c)));
    }
    out[i] = std::exp(log_sum / static_cast<double>(cols.size()));
  }
  return WeightVector<double>(std::move(out));
}

}  // namespace pcm
