// Perron eigenpair by power iteration, eigenvector structure for A_n(B),
// and efficiency results for the Perron vector of 3-block and constant
// block perturbed matrices.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "pcm/blockpert.hpp"
#include "pcm/efficiency.hpp"
#include "pcm/matrix.hpp"

namespace pcm {

struct PerronResult {
  double lambda = 0.0;
  WeightVector<double> w;  // last entry 1
  double residual = 0.0;   // max_i |(Aw)_i - lambda w_i| / (lambda w_i)
  Index iterations = 0;
};

/// Power iteration from the all-ones vector, normalizing the last entry to 1
/// each step. Stops once successive Rayleigh quotients and the residual are
/// both below `tol`.
template <Scalar T>
PerronResult perron(const ReciprocalMatrix<T>& a, double tol = Tolerances{}.perron, Index max_iter = 100000) {
  const Index n = a.size();
  std::vector<double> m(n * n);
  for (Index i = 0; i < n * n; ++i) m[i] = pcm::to_double(a.data()[i]);

  std::vector<double> w(n, 1.0), y(n);
  double previous = 0.0;
  for (Index it = 1; it <= max_iter; ++it) {
    for (Index i = 0; i < n; ++i) {
      double acc = 0.0;
      for (Index j = 0; j < n; ++j) acc += m[i * n + j] * w[j];
      y[i] = acc;
    }
    double wy = 0.0, ww = 0.0;
    for (Index i = 0; i < n; ++i) {
      wy += w[i] * y[i];
      ww += w[i] * w[i];
    }
    const double lambda = wy / ww;
    double residual = 0.0;
    for (Index i = 0; i < n; ++i) residual = std::max(residual, std::fabs(y[i] - lambda * w[i]) / (lambda * w[i]));
    if (std::fabs(lambda - previous) < tol * lambda && residual < tol) {
      return PerronResult{lambda, WeightVector<double>(w), residual, it};
    }
    previous = lambda;
    const double last = y[n - 1];
    for (Index i = 0; i < n; ++i) w[i] = y[i] / last;
  }
  throw Error(Errc::no_convergence, "power iteration did not converge in " + std::to_string(max_iter) + " steps");
}

struct TailStructure {
  bool ok = false;
  bool vacuous = false;  // n == s + 1: nothing to compare
};

/// Whether the tail entries s+1..n of the eigenvector coincide.
inline TailStructure perron_tail_structure(Index s, const PerronResult& r, double tol = Tolerances{}.perron) {
  const Index n = r.w.size();
  if (n <= s + 1) return {true, true};
  for (Index i = s + 1; i < n; ++i) {
    if (!approx_equal(r.w[i], r.w[s], 10.0 * tol)) return {false, false};
  }
  return {true, false};
}

template <Scalar T>
TailStructure perron_tail_structure(const BlockPerturbedForm<T>& form, const PerronResult& r,
                                    double tol = Tolerances{}.perron) {
  if (r.w.size() != form.n) throw Error(Errc::dimension_mismatch, "eigenvector size differs from form");
  return perron_tail_structure(form.s, r, tol);
}

/// The Perron vector r of A_n(B) is efficient iff its leading s+1 entries
/// are efficient for the leading (s+1)x(s+1) block.
template <Scalar T>
EfficiencyVerdict<double> perron_efficiency_via_submatrix(const BlockPerturbedForm<T>& form, const PerronResult& r,
                                                          const Tolerances& tol = {}) {
  if (!perron_tail_structure(form, r, tol.perron).ok) {
    throw Error(Errc::structure_violation, "tail entries of the eigenvector are not equal");
  }
  IndexSet lead(form.s + 1);
  std::iota(lead.begin(), lead.end(), Index{0});
  const ReciprocalMatrix<double> sub = form.canonical().to_double_matrix().principal(lead);
  return is_efficient(sub, r.w.restrict_to(lead), tol);
}

enum class PerronCondition { none, cond1, cond2, cond3 };

inline const char* condition_name(PerronCondition c) {
  switch (c) {
    case PerronCondition::none: return "none";
    case PerronCondition::cond1: return "cond1";
    case PerronCondition::cond2: return "cond2";
    case PerronCondition::cond3: return "cond3";
  }
  return "?";
}

template <Scalar T>
struct ThreeBlockPerronConditions {
  T a12, a13, a23;
  T q;  // a13 - a23 a12
  PerronCondition matched = PerronCondition::none;
};

/// Sufficient conditions (with a13 >= 1, q = a13 - a23 a12):
///   1. a12 >= 1, a23 >= 1, q <= 0
///   2. a12 >= 1, a23 <= 1, q >= 0
///   3. a12 <= 1, a23 >= 1, q >= 0
/// Any match makes the Perron vector of A_n(B) efficient for every n >= 4.
template <Scalar T>
ThreeBlockPerronConditions<T> three_block_sufficient(const ReciprocalMatrix<T>& b) {
  if (b.size() != 3) throw Error(Errc::bad_shape, "expected a 3x3 block");
  ThreeBlockPerronConditions<T> c{b(0, 1), b(0, 2), b(1, 2), T(0)};
  if (c.a13 < T(1)) throw Error(Errc::not_normalized, "a13 < 1; reverse the block first");
  c.q = c.a13 - c.a23 * c.a12;
  const T one(1), zero(0);
  if (c.a12 >= one && c.a23 >= one && c.q <= zero) {
    c.matched = PerronCondition::cond1;
  } else if (c.a12 >= one && c.a23 <= one && c.q >= zero) {
    c.matched = PerronCondition::cond2;
  } else if (c.a12 <= one && c.a23 >= one && c.q >= zero) {
    c.matched = PerronCondition::cond3;
  }
  return c;
}

/// The cycle (1-based) that each condition forces in G(A[{1,2,3,4}], w[{1,2,3,4}]).
inline std::vector<Index> condition_cycle(PerronCondition c) {
  switch (c) {
    case PerronCondition::cond1: return {1, 4, 3, 2, 1};
    case PerronCondition::cond2: return {1, 4, 2, 3, 1};
    case PerronCondition::cond3: return {1, 2, 4, 3, 1};
    case PerronCondition::none: break;
  }
  return {};
}

/// Left-hand sides of the six row-difference identities that hold at the
/// Perron pair of a 3-block matrix (order: r1-r4, r4-r3, r2-r4, r1-a12 r2,
/// r2-a23 r3, r1-a13 r3). Each is zero up to rounding.
template <Scalar T>
std::array<double, 6> three_block_identity_residuals(const ThreeBlockMatrix<T>& a, const PerronResult& r) {
  const double a12 = pcm::to_double(a.a12()), a13 = pcm::to_double(a.a13()), a23 = pcm::to_double(a.a23());
  const double l = r.lambda;
  const double w1 = r.w[0], w2 = r.w[1], w3 = r.w[2], w4 = r.w[3];
  const double t = static_cast<double>(a.n) - 3.0;
  return {
      l * (w4 - w1) + (a12 - 1) * w2 + (a13 - 1) * w3,
      l * (w3 - w4) + (1 - 1 / a13) * w1 + (1 - 1 / a23) * w2,
      l * (w4 - w2) + (1 / a12 - 1) * w1 + (a23 - 1) * w3,
      l * (a12 * w2 - w1) + (a13 - a23 * a12) * w3 + (1 - a12) * t * w4,
      l * (a23 * w3 - w2) + (1 / a12 - a23 / a13) * w1 + (1 - a23) * t * w4,
      l * (a13 * w3 - w1) + (a12 - a13 / a23) * w2 + (1 - a13) * t * w4,
  };
}

/// Which of the three condition cycles (1-based) are present in G(A', w').
inline std::vector<std::vector<Index>> present_condition_cycles(const ComparisonDigraph& g4) {
  std::vector<std::vector<Index>> out;
  for (auto c : {PerronCondition::cond1, PerronCondition::cond2, PerronCondition::cond3}) {
    std::vector<Index> cyc = condition_cycle(c);
    std::vector<Index> zero_based;
    for (Index v : cyc) zero_based.push_back(v - 1);
    if (g4.has_path(zero_based)) out.push_back(cyc);
  }
  return out;
}

struct ConstantPerronReport {
  PerronResult normalized;         // Perron pair of the normalized matrix
  WeightVector<double> w;          // Perron vector of the input matrix, last entry 1
  bool reversed = false;
  std::vector<Index> cycle;        // 1-based witness cycle in normalized coordinates
  EfficiencyVerdict<double> verdict;
};

/// The Perron vector of A_n(C_s(x)) is efficient; the witness is the cycle
/// s+1 -> s -> ... -> 1 -> s+1 in G(A[1..s+1], w[1..s+1]). A missing witness
/// is reported as TheoremViolation.
template <Scalar T>
ConstantPerronReport constant_block_perron_check(const ConstantBlockMatrix<T>& m, const Tolerances& tol = {}) {
  if (m.n <= m.s) throw Error(Errc::bad_shape, "need n > s");
  const ConstantBlockMatrix<T> norm = m.normalized();
  const ReciprocalMatrix<double> a = norm.matrix().to_double_matrix();
  ConstantPerronReport rep;
  rep.normalized = perron(a, tol.perron);
  rep.reversed = norm.reversed != m.reversed;

  IndexSet lead(m.s + 1);
  std::iota(lead.begin(), lead.end(), Index{0});
  const ReciprocalMatrix<double> sub = a.principal(lead);
  const WeightVector<double> wl = rep.normalized.w.restrict_to(lead);
  const ComparisonDigraph g = build_digraph(sub, wl, tol);
  std::vector<Index> path;
  for (Index v = m.s + 1; v >= 1; --v) path.push_back(v - 1);
  path.push_back(m.s);
  rep.cycle.clear();
  for (Index v : path) rep.cycle.push_back(v + 1);
  if (!g.has_path(path)) {
    throw Error(Errc::theorem_violation, "witness cycle missing for constant block Perron vector");
  }
  rep.verdict = is_efficient(sub, wl, tol);
  if (!rep.verdict.efficient) throw Error(Errc::theorem_violation, "constant block Perron vector not efficient");

  if (rep.reversed) {
    std::vector<double> v(rep.normalized.w.values());
    std::reverse(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m.s));
    rep.w = WeightVector<double>(std::move(v));
  } else {
    rep.w = rep.normalized.w;
  }
  return rep;
}

struct PerronReport {
  PerronResult result;
  std::optional<Index> block_size;  // size of the detected perturbed block
  bool structure_ok = false;
  bool structure_vacuous = false;
  std::optional<PerronCondition> sufficient_condition;  // 3-blocks only
  bool block_reversed = false;
  std::vector<std::vector<Index>> cycles;  // condition cycles present, 1-based
  bool efficient = false;
  EfficiencyVerdict<double> verdict;
};

/// Perron vector of A plus everything known about it: equal-tail structure
/// of the canonical form, the 3-block sufficient conditions and which
/// condition cycles appear in the leading 4x4 digraph.
template <Scalar T>
PerronReport analyze_perron(const ReciprocalMatrix<T>& a, const Tolerances& tol = {}) {
  PerronReport rep;
  rep.result = perron(a, tol.perron);
  rep.verdict = is_efficient(a.to_double_matrix(), rep.result.w, tol);
  rep.efficient = rep.verdict.efficient;

  const auto found = detect_minimal_block(a, tol);
  if (!found) return rep;
  const BlockPerturbedForm<T>& form = found->form;
  rep.block_size = form.s;
  const PerronResult canon = perron(form.canonical(), tol.perron);
  const TailStructure ts = perron_tail_structure(form, canon, tol.perron);
  rep.structure_ok = ts.ok;
  rep.structure_vacuous = ts.vacuous;

  if (form.s == 3 && form.n >= 4) {
    const ThreeBlockMatrix<T> tb = ThreeBlockMatrix<T>{form.block_matrix(), form.n}.normalize_a13();
    rep.sufficient_condition = three_block_sufficient(tb.block).matched;
    rep.block_reversed = tb.reversed;
    const ReciprocalMatrix<double> full = tb.matrix().to_double_matrix();
    const PerronResult rn = perron(full, tol.perron);
    const IndexSet lead{0, 1, 2, 3};
    rep.cycles = present_condition_cycles(build_digraph(full.principal(lead), rn.w.restrict_to(lead), tol));
  }
  return rep;
}

}  // namespace pcm
