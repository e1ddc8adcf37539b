// Random instance generators shared by the unit tests and the acceptance run.

#pragma once

#include <random>
#include <vector>

#include "pcm/pcm.hpp"

namespace pcm::testing {

using Rng = std::mt19937_64;

inline Rational q(long num, long den = 1) { return fixtures::q(num, den); }

/// Small positive rationals p/r with p, r in 1..9: ties between products are common.
inline Rational small_rational(Rng& rng, long top = 9) {
  std::uniform_int_distribution<long> d(1, top);
  return q(d(rng), d(rng));
}

inline ReciprocalMatrix<Rational> random_reciprocal(Index n, Rng& rng, long top = 9) {
  std::vector<Rational> up;
  for (Index k = 0; k < n * (n - 1) / 2; ++k) up.push_back(small_rational(rng, top));
  return ReciprocalMatrix<Rational>::from_upper(n, up);
}

inline WeightVector<Rational> random_integer_vector(Index n, Rng& rng, long top = 8) {
  std::uniform_int_distribution<long> d(1, top);
  std::vector<Rational> v;
  for (Index i = 0; i < n; ++i) v.push_back(q(d(rng)));
  return WeightVector<Rational>(std::move(v));
}

inline WeightVector<Rational> random_rational_vector(Index n, Rng& rng, long top = 9) {
  std::vector<Rational> v;
  for (Index i = 0; i < n; ++i) v.push_back(small_rational(rng, top));
  return WeightVector<Rational>(std::move(v));
}

inline WeightVector<Rational> column(const ReciprocalMatrix<Rational>& a, Index c) {
  std::vector<Rational> v;
  for (Index i = 0; i < a.size(); ++i) v.push_back(a(i, c));
  return WeightVector<Rational>(std::move(v));
}

/// An efficient vector for a: a filtered random candidate when one turns up
/// quickly, otherwise a random column (columns are always efficient).
inline WeightVector<Rational> random_efficient(const ReciprocalMatrix<Rational>& a, Rng& rng, int tries = 40) {
  std::uniform_int_distribution<int> coin(0, 2);
  if (coin(rng) != 0) {
    for (int t = 0; t < tries; ++t) {
      WeightVector<Rational> w = coin(rng) == 0 ? random_integer_vector(a.size(), rng)
                                                : random_rational_vector(a.size(), rng);
      if (digraph_efficient(a, w)) return w;
    }
  }
  std::uniform_int_distribution<Index> c(0, a.size() - 1);
  return column(a, c(rng));
}

inline MonomialSimilarity<Rational> random_similarity(Index n, Rng& rng) {
  MonomialSimilarity<Rational> m;
  for (Index i = 0; i < n; ++i) m.diag.push_back(small_rational(rng));
  m.perm.resize(n);
  std::iota(m.perm.begin(), m.perm.end(), Index{0});
  std::shuffle(m.perm.begin(), m.perm.end(), rng);
  return m;
}

inline double log_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace pcm::testing
