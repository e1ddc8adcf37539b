// Closed-form efficiency tests and generators for block-perturbed consistent
// matrices: the 2-block matrix S(x), arbitrary 3x3 matrices, the
// tail-bounds extension of efficient block vectors, the 3-block union
// route and the constant block C_s(x).

#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "pcm/efficiency.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

/// Draws from the closed interval [lo, hi]: 10% lo, 10% hi, otherwise
/// uniform inside. On the exact backend interior points sit on a 1/1000 lattice.
template <Scalar T, class Rng>
T sample_closed(const T& lo, const T& hi, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng);
  if (r == 0) return lo;
  if (r == 1) return hi;
  if constexpr (is_exact_v<T>) {
    std::uniform_int_distribution<long> step(1, 999);
    return T(lo + (hi - lo) * Rational(step(rng), 1000));
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return lo + (hi - lo) * u(rng);
  }
}

/// S(x): ones except s_12 = x, s_21 = 1/x.
template <Scalar T>
struct TwoBlockMatrix {
  T x;
  Index n;

  ReciprocalMatrix<T> matrix() const {
    if (n < 3) throw Error(Errc::bad_shape, "S(x) needs n >= 3");
    Grid<T> g(n, std::vector<T>(n, T(1)));
    g[0][1] = x;
    g[1][0] = T(1) / x;
    return ReciprocalMatrix<T>::validate(g);
  }
};

/// Efficient for S(x) iff w2 <= w3..wn <= w1 <= x w2, or the reverse chain.
template <Scalar T>
bool two_block_is_efficient(const TwoBlockMatrix<T>& s, const WeightVector<T>& w, const Tolerances& tol = {}) {
  if (w.size() != s.n) throw Error(Errc::dimension_mismatch, "vector size differs from matrix");
  const double e = tol.edge;
  bool ascending = leq(w[0], T(s.x * w[1]), e);
  bool descending = leq(T(s.x * w[1]), w[0], e);
  for (Index k = 2; k < s.n && (ascending || descending); ++k) {
    ascending = ascending && leq(w[1], w[k], e) && leq(w[k], w[0], e);
    descending = descending && leq(w[k], w[1], e) && leq(w[0], w[k], e);
  }
  return ascending || descending;
}

/// 3x3 characterization: a23 w3 <= w2 <= w1/a12 <= a13 w3 / a12, or all reversed.
template <Scalar T>
bool three_by_three_is_efficient(const ReciprocalMatrix<T>& b, const WeightVector<T>& w, const Tolerances& tol = {}) {
  if (b.size() != 3 || w.size() != 3) throw Error(Errc::dimension_mismatch, "expected a 3x3 matrix and 3-vector");
  const double e = tol.edge;
  const T c0 = b(1, 2) * w[2];
  const T c1 = w[1];
  const T c2 = w[0] / b(0, 1);
  const T c3 = b(0, 2) * w[2] / b(0, 1);
  const bool up = leq(c0, c1, e) && leq(c1, c2, e) && leq(c2, c3, e);
  const bool down = leq(c1, c0, e) && leq(c2, c1, e) && leq(c3, c2, e);
  return up || down;
}

namespace detail {

template <Scalar T>
std::pair<T, T> min_max(std::span<const T> xs) {
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return {*lo, *hi};
}

template <Scalar T>
bool head_efficient(const BlockPerturbedForm<T>& form, const WeightVector<T>& head, const Tolerances& tol) {
  if (form.s < 2) return true;
  return digraph_efficient(form.block_matrix(), head, tol);
}

}  // namespace detail

/// For w (canonical coordinates) whose head w[1..s] is efficient for B:
/// w is efficient for A_n(B) iff every tail entry lies in [min head, max head].
template <Scalar T>
bool lcompl_membership(const BlockPerturbedForm<T>& form, const WeightVector<T>& w, const Tolerances& tol = {}) {
  if (w.size() != form.n) throw Error(Errc::dimension_mismatch, "vector size differs from form");
  const std::span<const T> all(w.values());
  const auto head_span = all.first(form.s);
  const WeightVector<T> head(std::vector<T>(head_span.begin(), head_span.end()));
  if (!detail::head_efficient(form, head, tol)) {
    throw Error(Errc::head_not_efficient, "w[1..s] is not efficient for B");
  }
  const auto [lo, hi] = detail::min_max<T>(head_span);
  for (Index i = form.s; i < form.n; ++i) {
    if (!leq(lo, w[i], tol.edge) || !leq(w[i], hi, tol.edge)) return false;
  }
  return true;
}

/// Extends an efficient head for B by tails drawn from [min head, max head].
template <Scalar T>
class LcomplSampler {
 public:
  LcomplSampler(const BlockPerturbedForm<T>& form, WeightVector<T> head, Index tail_count, const Tolerances& tol = {})
      : head_(std::move(head)), tail_count_(tail_count) {
    if (head_.size() != form.s) throw Error(Errc::dimension_mismatch, "head size differs from block size");
    if (!detail::head_efficient(form, head_, tol)) {
      throw Error(Errc::head_not_efficient, "head is not efficient for B");
    }
    std::tie(lo_, hi_) = detail::min_max<T>(std::span<const T>(head_.values()));
  }

  template <class Rng>
  WeightVector<T> next(Rng& rng) const {
    std::vector<T> out(head_.values());
    for (Index k = 0; k < tail_count_; ++k) out.push_back(sample_closed(lo_, hi_, rng));
    return WeightVector<T>(std::move(out));
  }

  const T& tail_lo() const noexcept { return lo_; }
  const T& tail_hi() const noexcept { return hi_; }

 private:
  WeightVector<T> head_;
  Index tail_count_;
  T lo_, hi_;
};

/// Permutes the tail entries s+1..n: new tail[k] = old tail[perm[k]].
template <Scalar T>
WeightVector<T> tail_permute(const BlockPerturbedForm<T>& form, const WeightVector<T>& w,
                             std::span<const Index> perm) {
  if (w.size() != form.n || perm.size() != form.n - form.s) {
    throw Error(Errc::dimension_mismatch, "permutation must cover the tail");
  }
  std::vector<T> out(w.values());
  for (Index k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size()) throw Error(Errc::bad_shape, "tail permutation index out of range");
    out[form.s + k] = w[form.s + perm[k]];
  }
  return WeightVector<T>(std::move(out));
}

/// A_n(B) with B in PC_3.
template <Scalar T>
struct ThreeBlockMatrix {
  ReciprocalMatrix<T> block;
  Index n;
  bool reversed = false;  // set when the block was reversed to make a13 >= 1

  const T& a12() const { return block(0, 1); }
  const T& a13() const { return block(0, 2); }
  const T& a23() const { return block(1, 2); }

  ReciprocalMatrix<T> matrix() const {
    if (block.size() != 3 || n < 4) throw Error(Errc::bad_shape, "3-block matrix needs B in PC_3 and n >= 4");
    return ReciprocalMatrix<T>::block_perturbed(block, n);
  }

  /// Reverses indices 1..3 when a13 < 1; the reversed block has a13 >= 1.
  ThreeBlockMatrix normalize_a13() const {
    if (a13() >= T(1)) return *this;
    const IndexSet rev{2, 1, 0};
    return ThreeBlockMatrix{block.principal(rev), n, !reversed};
  }
};

struct MembershipResult {
  bool member = false;
  std::optional<Index> witness;  // 0-based j >= 3
};

/// One route of the union: w[{1,2,3,j}] efficient for A_4(B) by the 4x4
/// digraph test, and the other tail entries inside its [min, max]. j is 0-based, j >= 3.
template <Scalar T>
bool three_block_route(const ThreeBlockMatrix<T>& a, const WeightVector<T>& w, Index j, const Tolerances& tol = {}) {
  if (a.n < 4) throw Error(Errc::bad_shape, "3-block membership needs n >= 4");
  if (w.size() != a.n) throw Error(Errc::dimension_mismatch, "vector size differs from matrix");
  if (j < 3 || j >= a.n) throw Error(Errc::bad_shape, "route index must be a tail position");
  const ReciprocalMatrix<T> leading = ReciprocalMatrix<T>::block_perturbed(a.block, 4);
  const IndexSet pick{0, 1, 2, j};
  const WeightVector<T> sub = w.restrict_to(pick);
  if (!digraph_efficient(leading, sub, tol)) return false;
  const auto [lo, hi] = detail::min_max<T>(std::span<const T>(sub.values()));
  for (Index k = 3; k < a.n; ++k) {
    if (k == j) continue;
    if (!leq(lo, w[k], tol.edge) || !leq(w[k], hi, tol.edge)) return false;
  }
  return true;
}

/// Union over j = 4..n of the routes above; reports the smallest j that works.
template <Scalar T>
MembershipResult three_block_membership(const ThreeBlockMatrix<T>& a, const WeightVector<T>& w,
                                        const Tolerances& tol = {}) {
  for (Index j = 3; j < a.n; ++j) {
    if (three_block_route(a, w, j, tol)) return {true, j};
  }
  if (a.n < 4) throw Error(Errc::bad_shape, "3-block membership needs n >= 4");
  return {};
}

template <Scalar T>
struct GeneratedVector {
  WeightVector<T> vector;
  WeightVector<T> seed_head;
  T tail_lo;
  T tail_hi;
  std::vector<Index> permutation;  // applied to the tail positions
};

/// Extends each certified 4-vector seed by tails in [min, max] and applies a
/// random permutation of positions 4..n. Seeds failing the 4x4 digraph test
/// are skipped.
template <Scalar T, class Rng>
std::vector<GeneratedVector<T>> three_block_generate(const ThreeBlockMatrix<T>& a,
                                                     const std::vector<WeightVector<T>>& four_vectors, Rng& rng,
                                                     Index per_seed = 1, const Tolerances& tol = {}) {
  const BlockPerturbedForm<T> form = canonical_form(a.block, a.n);
  const ReciprocalMatrix<T> leading = ReciprocalMatrix<T>::block_perturbed(a.block, 4);
  std::vector<GeneratedVector<T>> out;
  for (const auto& seed : four_vectors) {
    if (seed.size() != 4) throw Error(Errc::dimension_mismatch, "seeds must be 4-vectors");
    if (!digraph_efficient(leading, seed, tol)) continue;
    const auto [lo, hi] = detail::min_max<T>(std::span<const T>(seed.values()));
    for (Index rep = 0; rep < per_seed; ++rep) {
      std::vector<T> v(seed.values());
      for (Index k = 4; k < a.n; ++k) v.push_back(sample_closed(lo, hi, rng));
      std::vector<Index> perm(a.n - 3);
      std::iota(perm.begin(), perm.end(), Index{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      WeightVector<T> permuted = tail_permute(form, WeightVector<T>(std::move(v)), perm);
      out.push_back(GeneratedVector<T>{std::move(permuted), seed, lo, hi, std::move(perm)});
    }
  }
  return out;
}

struct FullSetCheck {
  bool closed_form = false;
  std::vector<bool> routes;  // routes[k] is the {1,2,k+3} verdict
  bool all_agree = true;
};

/// Cross-checks the S(x) chains against every {1,2,j} route: the 3x3
/// characterization on w[{1,2,j}] plus tail bounds for the rest.
template <Scalar T>
FullSetCheck two_block_full_set_check(const TwoBlockMatrix<T>& s, const WeightVector<T>& w,
                                      const Tolerances& tol = {}) {
  if (s.n < 4) throw Error(Errc::bad_shape, "full-set check needs n >= 4");
  FullSetCheck out;
  out.closed_form = two_block_is_efficient(s, w, tol);
  const ReciprocalMatrix<T> a = s.matrix();
  for (Index j = 2; j < s.n; ++j) {
    const IndexSet pick{0, 1, j};
    const WeightVector<T> sub = w.restrict_to(pick);
    bool route = three_by_three_is_efficient(a.principal(pick), sub, tol);
    if (route) {
      const auto [lo, hi] = detail::min_max<T>(std::span<const T>(sub.values()));
      for (Index k = 2; k < s.n && route; ++k) {
        if (k == j) continue;
        route = leq(lo, w[k], tol.edge) && leq(w[k], hi, tol.edge);
      }
    }
    out.routes.push_back(route);
    if (route != out.closed_form) out.all_agree = false;
  }
  return out;
}

/// A_n(C_s(x)), where C_s(x) has every above-diagonal entry equal to x.
template <Scalar T>
struct ConstantBlockMatrix {
  T x;
  Index s;
  Index n;
  bool reversed = false;  // set when x < 1 was replaced by 1/x via block reversal

  static ReciprocalMatrix<T> constant_block(const T& x, Index s) {
    Grid<T> g(s, std::vector<T>(s, T(1)));
    for (Index i = 0; i < s; ++i) {
      for (Index j = i + 1; j < s; ++j) {
        g[i][j] = x;
        g[j][i] = T(1) / x;
      }
    }
    return ReciprocalMatrix<T>::validate(g);
  }

  ReciprocalMatrix<T> block() const { return constant_block(x, s); }

  ReciprocalMatrix<T> matrix() const {
    if (s < 2 || n < s) throw Error(Errc::bad_shape, "constant block needs 2 <= s <= n");
    return ReciprocalMatrix<T>::block_perturbed(block(), n);
  }

  /// Reversing the block turns C_s(x) into C_s(1/x).
  ConstantBlockMatrix normalized() const {
    if (x >= T(1)) return *this;
    return ConstantBlockMatrix{T(T(1) / x), s, n, !reversed};
  }

  /// Maps a vector between this matrix and its normalized form (an involution).
  WeightVector<T> reverse_head(const WeightVector<T>& w) const {
    std::vector<T> out(w.values());
    std::reverse(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(s));
    return WeightVector<T>(std::move(out));
  }
};

/// Sufficient condition for w in E(C_s(x)) (w has s entries):
/// w3 <= w1/x <= w2 <= x w3 and (1/x) min{w3..w_{i-1}} <= w_i <= w1/x for i >= 4.
template <Scalar T>
bool constant_block_class_check(const ConstantBlockMatrix<T>& m, const WeightVector<T>& w,
                                const Tolerances& tol = {}) {
  if (m.s < 3) throw Error(Errc::bad_shape, "constant block class needs s >= 3");
  if (w.size() != m.s) throw Error(Errc::dimension_mismatch, "vector must have s entries");
  const ConstantBlockMatrix<T> norm = m.normalized();
  const WeightVector<T> v = norm.reversed != m.reversed ? m.reverse_head(w) : w;
  const T& x = norm.x;
  const double e = tol.edge;
  const T top = v[0] / x;
  if (!(leq(v[2], top, e) && leq(top, v[1], e) && leq(v[1], T(x * v[2]), e))) return false;
  T running_min = v[2];
  for (Index i = 3; i < m.s; ++i) {
    if (!leq(T(running_min / x), v[i], e) || !leq(v[i], top, e)) return false;
    if (v[i] < running_min) running_min = v[i];
  }
  return true;
}

/// Draws w in the constant-block class for C_s(x) (normalized coordinates
/// mapped back when x < 1). Requires s >= 3.
template <Scalar T, class Rng>
WeightVector<T> sample_constant_block_head(const ConstantBlockMatrix<T>& m, Rng& rng) {
  if (m.s < 3) throw Error(Errc::bad_shape, "constant block class needs s >= 3");
  const ConstantBlockMatrix<T> norm = m.normalized();
  const T& x = norm.x;
  std::vector<T> v(m.s);
  v[2] = T(1);
  v[1] = sample_closed(v[2], T(x * v[2]), rng);
  const T top = sample_closed(v[2], v[1], rng);  // w1 / x
  v[0] = x * top;
  T running_min = v[2];
  for (Index i = 3; i < m.s; ++i) {
    v[i] = sample_closed(T(running_min / x), top, rng);
    if (v[i] < running_min) running_min = v[i];
  }
  WeightVector<T> w(std::move(v));
  return norm.reversed != m.reversed ? m.reverse_head(w) : w;
}

/// Draws w satisfying one of the S(x) chains.
template <Scalar T, class Rng>
WeightVector<T> sample_two_block(const TwoBlockMatrix<T>& s, Rng& rng) {
  std::vector<T> v(s.n);
  v[1] = T(1);
  if (s.x >= T(1)) {
    v[0] = sample_closed(T(1), s.x, rng);
    for (Index k = 2; k < s.n; ++k) v[k] = sample_closed(v[1], v[0], rng);
  } else {
    v[0] = sample_closed(s.x, T(1), rng);
    for (Index k = 2; k < s.n; ++k) v[k] = sample_closed(v[0], v[1], rng);
  }
  return WeightVector<T>(std::move(v));
}

}  // namespace pcm
