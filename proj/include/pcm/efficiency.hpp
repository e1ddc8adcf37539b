// Efficiency of weight vectors via the comparison digraph G(A, w): w is
// efficient for A iff G(A, w) is strongly connected. Inefficient verdicts
// carry a source component and an explicit dominating vector.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pcm/matrix.hpp"

namespace pcm {

/// G(A, w): edge i -> j (i != j) iff w_i / w_j >= a_ij.
class ComparisonDigraph {
 public:
  explicit ComparisonDigraph(Index n) : n_(n), adj_(n * n, 0) {}

  Index size() const noexcept { return n_; }
  bool has_edge(Index i, Index j) const { return adj_[i * n_ + j] != 0; }
  void set_edge(Index i, Index j) { adj_[i * n_ + j] = 1; }

  std::vector<std::pair<Index, Index>> edges() const {
    std::vector<std::pair<Index, Index>> out;
    for (Index i = 0; i < n_; ++i) {
      for (Index j = 0; j < n_; ++j) {
        if (has_edge(i, j)) out.emplace_back(i, j);
      }
    }
    return out;
  }

  /// Induced subgraph on `keep`, relabelled 0..|keep|-1.
  ComparisonDigraph induced(std::span<const Index> keep) const {
    ComparisonDigraph g(keep.size());
    for (Index a = 0; a < keep.size(); ++a) {
      for (Index b = 0; b < keep.size(); ++b) {
        if (a != b && has_edge(keep[a], keep[b])) g.set_edge(a, b);
      }
    }
    return g;
  }

  /// True iff every directed edge of `path` (consecutive pairs) is present.
  bool has_path(std::span<const Index> path) const {
    for (Index k = 0; k + 1 < path.size(); ++k) {
      if (!has_edge(path[k], path[k + 1])) return false;
    }
    return true;
  }

 private:
  Index n_;
  std::vector<unsigned char> adj_;
};

template <Scalar T>
ComparisonDigraph build_digraph(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, const Tolerances& tol = {}) {
  const Index n = a.size();
  if (w.size() != n) throw Error(Errc::dimension_mismatch, "matrix and vector sizes differ");
  ComparisonDigraph g(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j && edge_rule(w[i], w[j], a(i, j), tol.edge)) g.set_edge(i, j);
    }
  }
  return g;
}

struct SccDecomposition {
  bool strongly_connected = false;
  std::vector<IndexSet> components;     // each sorted; ordered by smallest vertex
  std::vector<Index> component_of;      // vertex -> index into components
  std::optional<IndexSet> source;       // lexicographically smallest source component, if not strongly connected
};

/// Tarjan's algorithm plus the source components of the condensation.
inline SccDecomposition is_strongly_connected(const ComparisonDigraph& g) {
  const Index n = g.size();
  constexpr Index unvisited = static_cast<Index>(-1);
  std::vector<Index> number(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<IndexSet> comps;
  Index counter = 0;

  std::function<void(Index)> visit = [&](Index v) {
    number[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (Index u = 0; u < n; ++u) {
      if (u == v || !g.has_edge(v, u)) continue;
      if (number[u] == unvisited) {
        visit(u);
        low[v] = std::min(low[v], low[u]);
      } else if (on_stack[u]) {
        low[v] = std::min(low[v], number[u]);
      }
    }
    if (low[v] == number[v]) {
      IndexSet comp;
      Index u;
      do {
        u = stack.back();
        stack.pop_back();
        on_stack[u] = false;
        comp.push_back(u);
      } while (u != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (Index v = 0; v < n; ++v) {
    if (number[v] == unvisited) visit(v);
  }

  std::sort(comps.begin(), comps.end());
  SccDecomposition out;
  out.component_of.assign(n, 0);
  for (Index c = 0; c < comps.size(); ++c) {
    for (Index v : comps[c]) out.component_of[v] = c;
  }
  out.strongly_connected = comps.size() == 1;
  if (!out.strongly_connected) {
    std::vector<bool> has_incoming(comps.size(), false);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (i != j && g.has_edge(i, j) && out.component_of[i] != out.component_of[j]) {
          has_incoming[out.component_of[j]] = true;
        }
      }
    }
    // comps is sorted, so the first source found is the lexicographically smallest.
    for (Index c = 0; c < comps.size(); ++c) {
      if (!has_incoming[c]) {
        out.source = comps[c];
        break;
      }
    }
  }
  out.components = std::move(comps);
  return out;
}

enum class Dominance { v_dominates, w_dominates, equal, incomparable };

inline const char* dominance_name(Dominance d) {
  switch (d) {
    case Dominance::v_dominates: return "v_dominates";
    case Dominance::w_dominates: return "w_dominates";
    case Dominance::equal: return "equal";
    case Dominance::incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {

template <Scalar T>
T approximation_error(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, Index i, Index j) {
  return abs_value(T(a(i, j) - w[i] / w[j]));
}

template <Scalar T>
bool proportional(const WeightVector<T>& w, const WeightVector<T>& v, double rel) {
  for (Index i = 1; i < w.size(); ++i) {
    if (!approx_equal(T(v[i] * w[0]), T(w[i] * v[0]), rel)) return false;
  }
  return true;
}

}  // namespace detail

/// Entry-wise comparison of |a_ij - v_i/v_j| against |a_ij - w_i/w_j|.
/// `v_dominates` means v is no worse everywhere and not a multiple of w.
template <Scalar T>
Dominance dominance_compare(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, const WeightVector<T>& v,
                            const Tolerances& tol = {}) {
  const Index n = a.size();
  if (w.size() != n || v.size() != n) throw Error(Errc::dimension_mismatch, "vector sizes differ from matrix");
  if (detail::proportional(w, v, tol.compare)) return Dominance::equal;
  const WeightVector<T> vs = v.scaled(T(w[0] / v[0]));
  bool v_le = true, w_le = true;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const T ev = detail::approximation_error(a, vs, i, j);
      const T ew = detail::approximation_error(a, w, i, j);
      if (!leq(ev, ew, tol.compare)) v_le = false;
      if (!leq(ew, ev, tol.compare)) w_le = false;
    }
  }
  if (v_le) return Dominance::v_dominates;
  if (w_le) return Dominance::w_dominates;
  return Dominance::incomparable;
}

/// True iff v is no worse than w everywhere and strictly better somewhere.
template <Scalar T>
bool strictly_dominates(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, const WeightVector<T>& v,
                        const Tolerances& tol = {}) {
  if (dominance_compare(a, w, v, tol) != Dominance::v_dominates) return false;
  const Index n = a.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j && strictly_less(detail::approximation_error(a, v, i, j), detail::approximation_error(a, w, i, j),
                                  tol.compare)) {
        return true;
      }
    }
  }
  return false;
}

/// Scales the source set S by t = max_{i in S, j not in S} a_ij w_j / w_i < 1.
/// Cross errors shrink, errors inside S and inside its complement are unchanged.
template <Scalar T>
WeightVector<T> construct_dominating_vector(const ReciprocalMatrix<T>& a, const WeightVector<T>& w,
                                            const IndexSet& source, const Tolerances& tol = {}) {
  const Index n = a.size();
  if (w.size() != n) throw Error(Errc::dimension_mismatch, "matrix and vector sizes differ");
  std::vector<bool> in_s(n, false);
  for (Index i : source) {
    if (i >= n) throw Error(Errc::invalid_witness, "source index out of range");
    in_s[i] = true;
  }
  const auto s_size = static_cast<Index>(std::count(in_s.begin(), in_s.end(), true));
  if (s_size == 0 || s_size == n) throw Error(Errc::invalid_witness, "source set must be nonempty and proper");

  const ComparisonDigraph g = build_digraph(a, w, tol);
  std::optional<T> t;
  for (Index i = 0; i < n; ++i) {
    if (!in_s[i]) continue;
    for (Index j = 0; j < n; ++j) {
      if (in_s[j]) continue;
      if (g.has_edge(j, i)) throw Error(Errc::invalid_witness, "source set has an incoming edge");
      const T factor = a(i, j) * w[j] / w[i];
      if (!t || factor > *t) t = factor;
    }
  }
  std::vector<T> out(w.values());
  for (Index i = 0; i < n; ++i) {
    if (in_s[i]) out[i] = *t * w[i];
  }
  return WeightVector<T>(std::move(out));
}

template <Scalar T>
struct EfficiencyVerdict {
  bool efficient = false;
  std::vector<IndexSet> scc_partition;
  std::optional<IndexSet> source_set;
  std::optional<WeightVector<T>> dominator;
  std::vector<std::pair<Index, Index>> edge_list;
};

template <Scalar T>
EfficiencyVerdict<T> is_efficient(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, const Tolerances& tol = {}) {
  const ComparisonDigraph g = build_digraph(a, w, tol);
  SccDecomposition scc = is_strongly_connected(g);
  EfficiencyVerdict<T> v;
  v.efficient = scc.strongly_connected;
  v.scc_partition = std::move(scc.components);
  v.edge_list = g.edges();
  if (!v.efficient) {
    v.source_set = scc.source;
    v.dominator = construct_dominating_vector(a, w, *scc.source, tol);
  }
  return v;
}

/// Digraph verdict only, without building the certificate.
template <Scalar T>
bool digraph_efficient(const ReciprocalMatrix<T>& a, const WeightVector<T>& w, const Tolerances& tol = {}) {
  return is_strongly_connected(build_digraph(a, w, tol)).strongly_connected;
}

template <Scalar T>
struct ExtensionInterval {
  T lo;
  T hi;
  Index k = 0;
};

namespace detail {

template <Scalar T>
ExtensionInterval<T> extension_bounds(const ReciprocalMatrix<T>& a, const WeightVector<T>& w_minus_k, Index k) {
  const Index n = a.size();
  if (k >= n || w_minus_k.size() + 1 != n) throw Error(Errc::dimension_mismatch, "w(k) must have n-1 entries");
  std::optional<T> lo, hi;
  for (Index i = 0, pos = 0; i < n; ++i) {
    if (i == k) continue;
    const T r = w_minus_k[pos++] / a(i, k);
    if (!lo || r < *lo) lo = r;
    if (!hi || r > *hi) hi = r;
  }
  return ExtensionInterval<T>{*lo, *hi, k};
}

}  // namespace detail

/// [min_{i != k} w_i / a_ik, max_{i != k} w_i / a_ik], valid when w(k) is
/// efficient for A(k): the extension is efficient iff w_k lies inside.
template <Scalar T>
ExtensionInterval<T> extension_interval(const ReciprocalMatrix<T>& a, const WeightVector<T>& w_minus_k, Index k,
                                        const Tolerances& tol = {}) {
  if (k >= a.size() || w_minus_k.size() + 1 != a.size()) {
    throw Error(Errc::dimension_mismatch, "w(k) must have n-1 entries");
  }
  if (a.size() > 2 && !digraph_efficient(a.without(k), w_minus_k, tol)) {
    throw Error(Errc::subvector_not_efficient, "w(k) is not efficient for A(k)");
  }
  return detail::extension_bounds(a, w_minus_k, k);
}

template <Scalar T>
bool extend_one(const ReciprocalMatrix<T>& a, const WeightVector<T>& w_minus_k, Index k, const T& wk,
                const Tolerances& tol = {}) {
  const auto iv = extension_interval(a, w_minus_k, k, tol);
  return leq(iv.lo, wk, tol.edge) && leq(wk, iv.hi, tol.edge);
}

/// Indices i with w(i) efficient for A(i).
template <Scalar T>
IndexSet subvector_efficiency_profile(const ReciprocalMatrix<T>& a, const WeightVector<T>& w,
                                      const Tolerances& tol = {}) {
  const Index n = a.size();
  if (n < 3) throw Error(Errc::bad_shape, "profile needs n >= 3");
  if (w.size() != n) throw Error(Errc::dimension_mismatch, "matrix and vector sizes differ");
  const ComparisonDigraph g = build_digraph(a, w, tol);
  IndexSet out;
  for (Index i = 0; i < n; ++i) {
    IndexSet keep;
    for (Index j = 0; j < n; ++j) {
      if (j != i) keep.push_back(j);
    }
    if (is_strongly_connected(g.induced(keep)).strongly_connected) out.push_back(i);
  }
  return out;
}

template <Scalar T>
struct TailReduction {
  ReciprocalMatrix<T> matrix;
  WeightVector<T> vector;
  BlockPerturbedForm<T> form;
  Index removed;  // canonical index that was deleted
};

/// For A_n(B) and w with equal tail entries w_p = w_q (p < q, first such
/// pair), deletes q. Efficiency of the reduced pair matches the original.
/// Returns nullopt when the tail has no equal pair (identity).
template <Scalar T>
std::optional<TailReduction<T>> equal_tail_reduce(const BlockPerturbedForm<T>& form, const WeightVector<T>& w,
                                                  const Tolerances& tol = {}) {
  if (w.size() != form.n) throw Error(Errc::dimension_mismatch, "vector size differs from form");
  for (Index p = form.s; p < form.n; ++p) {
    for (Index q = p + 1; q < form.n; ++q) {
      if (!approx_equal(w[p], w[q], tol.edge)) continue;
      if (form.n - 1 < 2) return std::nullopt;
      BlockPerturbedForm<T> reduced = form;
      reduced.n = form.n - 1;
      reduced.back_map = MonomialSimilarity<T>::identity(reduced.n);
      reduced.block.resize(form.s);
      std::iota(reduced.block.begin(), reduced.block.end(), Index{0});
      return TailReduction<T>{reduced.canonical(), w.without(q), reduced, q};
    }
  }
  return std::nullopt;
}

}  // namespace pcm
