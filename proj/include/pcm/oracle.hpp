// Brute-force cross-checks for the digraph efficiency test.
//
// The lattice search is one-sided: finding a dominator proves
// inefficiency, finding none proves nothing.

#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcm/efficiency.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

/// Log-uniform lattice around w: v_1 = w_1, v_i = w_i * rho^(k_i/m) with
/// k_i in [-m, m], giving (2m+1)^(n-1) candidates.
struct GridSpec {
  double rho = 2.0;
  int m = 6;
  double max_candidates = 1e7;
};

template <Scalar T>
std::optional<WeightVector<double>> grid_dominator_search(const ReciprocalMatrix<T>& a, const WeightVector<T>& w,
                                                          const GridSpec& g = {}, const Tolerances& tol = {}) {
  const Index n = a.size();
  if (w.size() != n) throw Error(Errc::dimension_mismatch, "matrix and vector sizes differ");
  if (!(g.rho > 1.0) || g.m < 1) throw Error(Errc::invalid_spec, "grid needs rho > 1 and m >= 1");
  const double side = 2.0 * g.m + 1.0;
  if (std::pow(side, static_cast<double>(n - 1)) > g.max_candidates) {
    throw Error(Errc::grid_too_large, "lattice exceeds the candidate bound");
  }
  const ReciprocalMatrix<double> ad = a.to_double_matrix();
  const WeightVector<double> wd = w.to_double_vector();

  std::vector<double> factor(2 * g.m + 1);
  for (int k = -g.m; k <= g.m; ++k) factor[k + g.m] = std::pow(g.rho, static_cast<double>(k) / g.m);

  std::vector<int> digit(n, 0);
  digit[0] = g.m;  // first coordinate pinned at the centre
  std::vector<double> v(n);
  while (true) {
    for (Index i = 0; i < n; ++i) v[i] = wd[i] * factor[digit[i]];
    const WeightVector<double> cand(v);
    if (strictly_dominates(ad, wd, cand, tol)) return cand;
    Index pos = 1;
    while (pos < n && digit[pos] == 2 * g.m) digit[pos++] = 0;
    if (pos == n) break;
    ++digit[pos];
  }
  return std::nullopt;
}

struct OracleReport {
  Index trials = 0;
  Index n = 0;
  Index efficient = 0;
  Index inefficient = 0;
  std::vector<std::string> contradictions;
  double runtime_ms = 0.0;
};

/// Checks one instance three ways. Returns a description of the
/// contradiction, or nullopt when the digraph verdict, the constructed
/// dominator and the lattice search agree.
template <Scalar T>
std::optional<std::string> cross_check_instance(const ReciprocalMatrix<T>& a, const WeightVector<T>& w,
                                                bool* efficient_out = nullptr, const GridSpec& g = {},
                                                const Tolerances& tol = {}) {
  const EfficiencyVerdict<T> verdict = is_efficient(a, w, tol);
  if (efficient_out) *efficient_out = verdict.efficient;
  const auto found = grid_dominator_search(a, w, g, tol);
  if (verdict.efficient) {
    if (found) return std::string("digraph efficient but lattice found a dominator");
    return std::nullopt;
  }
  if (!verdict.dominator || !strictly_dominates(a, w, *verdict.dominator, tol)) {
    return std::string("constructed vector does not dominate");
  }
  if (!found) return std::string("digraph inefficient but lattice found no dominator");
  return std::nullopt;
}

namespace detail {

inline std::string describe(const ReciprocalMatrix<Rational>& a, const WeightVector<Rational>& w) {
  std::string s = "A upper=[";
  for (Index i = 0; i < a.size(); ++i) {
    for (Index j = i + 1; j < a.size(); ++j) s += to_string(a(i, j)) + " ";
  }
  s += "] w=[";
  for (const auto& x : w) s += to_string(x) + " ";
  return s + "]";
}

}  // namespace detail

/// Entry scale for random instances: 3-smooth values 2^a 3^b, |a|, |b| <= 1.
inline const std::vector<Rational>& oracle_entry_scale() {
  static const std::vector<Rational> scale = [] {
    std::vector<Rational> s;
    for (long num : {1L, 2L, 3L, 6L}) {
      for (long den : {1L, 2L, 3L, 6L}) {
        Rational q(num, den);
        q.canonicalize();
        if (std::find(s.begin(), s.end(), q) == s.end()) s.push_back(q);
      }
    }
    return s;
  }();
  return scale;
}

/// Random exact instances of size n: entries from oracle_entry_scale(); w is
/// either a column of A (always efficient) or has entries 2^a 3^b, a, b in {0,1,2}.
template <class Rng>
std::pair<ReciprocalMatrix<Rational>, WeightVector<Rational>> random_oracle_instance(Index n, Rng& rng) {
  const auto& scale = oracle_entry_scale();
  std::uniform_int_distribution<Index> pick(0, scale.size() - 1);
  std::vector<Rational> upper;
  for (Index k = 0; k < n * (n - 1) / 2; ++k) upper.push_back(scale[pick(rng)]);
  auto a = ReciprocalMatrix<Rational>::from_upper(n, upper);

  std::uniform_int_distribution<int> coin(0, 3);
  std::vector<Rational> w(n);
  if (coin(rng) == 0) {
    std::uniform_int_distribution<Index> col(0, n - 1);
    const Index c = col(rng);
    for (Index i = 0; i < n; ++i) w[i] = a(i, c);
  } else {
    std::uniform_int_distribution<int> e(0, 2);
    for (Index i = 0; i < n; ++i) {
      Rational x(1);
      for (int k = e(rng); k > 0; --k) x *= 2;
      for (int k = e(rng); k > 0; --k) x *= 3;
      w[i] = x;
    }
  }
  return {std::move(a), WeightVector<Rational>(std::move(w))};
}

/// Random (A, w) of size n: digraph-inefficient instances must yield a
/// dominating certificate and a lattice dominator; digraph-efficient ones
/// must yield no lattice dominator.
template <class Rng>
OracleReport exhaustive_small_equivalence(Index trials, Index n, Rng& rng, const GridSpec& g = {},
                                          const Tolerances& tol = {}) {
  const auto start = std::chrono::steady_clock::now();
  OracleReport rep;
  rep.trials = trials;
  rep.n = n;
  for (Index t = 0; t < trials; ++t) {
    auto [a, w] = random_oracle_instance(n, rng);
    bool efficient = false;
    if (auto c = cross_check_instance(a, w, &efficient, g, tol)) {
      rep.contradictions.push_back(*c + ": " + detail::describe(a, w));
    }
    ++(efficient ? rep.efficient : rep.inefficient);
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pcm
