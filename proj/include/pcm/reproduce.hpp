// Bundled fixture matrices and the checks run by `pcm reproduce`.

#pragma once

#include <array>
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "pcm/blockpert.hpp"
#include "pcm/efficiency.hpp"
#include "pcm/matrix.hpp"
#include "pcm/perron.hpp"

namespace pcm {

namespace fixtures {

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline WeightVector<Rational> vec(std::initializer_list<Rational> xs) { return WeightVector<Rational>(std::vector<Rational>(xs)); }

inline ReciprocalMatrix<Rational> upper(Index n, std::initializer_list<Rational> xs) {
  const std::vector<Rational> v(xs);
  return ReciprocalMatrix<Rational>::from_upper(n, v);
}

/// The 4x4 matrix C with upper triangle (2, 3, 1; 1/2, 1; 1).
inline ReciprocalMatrix<Rational> matrix_c() { return upper(4, {q(2), q(3), q(1), q(1, 2), q(1), q(1)}); }

/// B with C = D^{-1} B D, D = diag(1, 2, 4, 2).
inline ReciprocalMatrix<Rational> matrix_b() { return upper(4, {q(1), q(3, 4), q(1, 2), q(1, 4), q(1), q(2)}); }

inline std::vector<Rational> diag_d() { return {q(1), q(2), q(4), q(2)}; }

/// 6x6 with B in PC_4 whose analog of the 3-block union fails.
inline ReciprocalMatrix<Rational> matrix_s4_counterexample() {
  const ReciprocalMatrix<Rational> b = upper(4, {q(5), q(2), q(3), q(1, 2), q(3), q(2)});
  return ReciprocalMatrix<Rational>::block_perturbed(b, 6);
}

/// 7x7 with B in PC_4: efficient vector whose efficient subvectors all omit a tail index.
inline ReciprocalMatrix<Rational> matrix_s4_tail_profile() {
  const ReciprocalMatrix<Rational> b = upper(4, {q(2), q(1), q(3), q(1, 4), q(1), q(2)});
  return ReciprocalMatrix<Rational>::block_perturbed(b, 7);
}

struct Table1Row {
  std::array<Rational, 3> a;  // a12, a13, a23
  bool efficient;
  std::vector<Index> cycle;  // 1-based, empty for "no"
};

inline std::vector<Table1Row> table1() {
  return {
      {{q(2), q(17, 2), q(2)}, false, {}},
      {{q(2), q(8), q(2)}, true, {1, 4, 3, 2, 1}},
      {{q(100), q(59, 10), q(1, 10)}, false, {}},
      {{q(90), q(59, 10), q(1, 10)}, true, {1, 4, 2, 3, 1}},
      {{q(1, 10), q(59, 10), q(140)}, false, {}},
      {{q(1, 10), q(59, 10), q(130)}, true, {1, 2, 4, 3, 1}},
      {{q(1, 2), q(8), q(2, 5)}, false, {}},
      {{q(1, 2), q(9), q(2, 5)}, true, {1, 2, 4, 3, 1}},
  };
}

}  // namespace fixtures

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceReport {
  std::vector<CheckLine> lines;
  double runtime_ms = 0.0;

  bool all_pass() const {
    return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; });
  }
  void add(std::string name, bool pass, std::string detail = {}) {
    lines.push_back({std::move(name), pass, std::move(detail)});
  }
};

namespace detail {

inline std::string triple_name(const std::array<Rational, 3>& a) {
  std::string s = "(";
  for (int i = 0; i < 3; ++i) {
    if (i) s += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", a[i].get_d());
    s += buf;
  }
  return s + ")";
}

inline std::string cycle_text(const std::vector<Index>& c) {
  std::string s;
  for (Index i = 0; i < c.size(); ++i) s += (i ? "->" : "") + std::to_string(c[i]);
  return s;
}

inline std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (Index i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

inline IndexSet zero_based(std::initializer_list<Index> one_based) {
  IndexSet out;
  for (Index i : one_based) out.push_back(i - 1);
  return out;
}

/// Sample points of [lo, hi] including both ends.
inline std::vector<Rational> closed_points(const Rational& lo, const Rational& hi) {
  std::vector<Rational> out{lo};
  for (long k = 1; k < 6; ++k) out.push_back(lo + (hi - lo) * fixtures::q(k, 6));
  out.push_back(hi);
  return out;
}

}  // namespace detail

/// Perron vectors of A_6(B) for the eight table rows: verdict, listed
/// cycle in the leading 4x4 digraph, and the residual bound.
inline ReproduceReport reproduce_table1(const Tolerances& tol = {}) {
  using namespace fixtures;
  const auto start = std::chrono::steady_clock::now();
  ReproduceReport rep;
  for (const auto& row : table1()) {
    const ReciprocalMatrix<Rational> b = upper(3, {row.a[0], row.a[1], row.a[2]});
    const BlockPerturbedForm<Rational> form = canonical_form(b, 6);
    const PerronResult r = perron(form.canonical(), tol.perron);
    const EfficiencyVerdict<double> sub = perron_efficiency_via_submatrix(form, r, tol);
    const bool full = is_efficient(form.canonical().to_double_matrix(), r.w, tol).efficient;
    const std::string name = "table1 " + detail::triple_name(row.a);

    std::string det = std::string(sub.efficient ? "yes" : "no") + " (expected " + (row.efficient ? "yes" : "no") + ")";
    rep.add(name + " verdict", sub.efficient == row.efficient && full == row.efficient, det);
    rep.add(name + " residual", r.residual <= tol.perron, to_string(r.residual));
    if (row.efficient) {
      const IndexSet lead{0, 1, 2, 3};
      const ComparisonDigraph g4 = build_digraph(form.canonical().to_double_matrix().principal(lead),
                                                 r.w.restrict_to(lead), tol);
      std::vector<Index> path;
      for (Index v : row.cycle) path.push_back(v - 1);
      rep.add(name + " cycle " + detail::cycle_text(row.cycle), g4.has_path(path));
    }
  }
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline void reproduce_extension_families(ReproduceReport& rep) {
  using namespace fixtures;
  const ReciprocalMatrix<Rational> c = matrix_c();
  const ReciprocalMatrix<Rational> b = matrix_b();
  const std::vector<Rational> d = diag_d();

  std::vector<Rational> inv;
  for (const auto& x : d) inv.push_back(1 / x);
  MonomialSimilarity<Rational> to_c{inv, {0, 1, 2, 3}};
  rep.add("families: C = D^-1 B D", apply_similarity(b, to_c) == c);
  MonomialSimilarity<Rational> dm{d, {0, 1, 2, 3}};
  const WeightVector<Rational> spot = transform_vector(dm, vec({q(15), q(8), q(8), q(12)}));
  rep.add("families: D (15,8,8,12) = (15,16,32,24) efficient for B",
          spot == vec({q(15), q(16), q(32), q(24)}) && digraph_efficient(c, vec({q(15), q(8), q(8), q(12)})) &&
              digraph_efficient(b, spot));

  const BlockPerturbedForm<Rational> form = canonical_form(b, 7);
  const ReciprocalMatrix<Rational> a = form.canonical();
  auto check_family = [&](const std::string& label, const std::vector<Rational>& params, auto head_c, auto head_b,
                          auto tail_lo, const Rational& tail_hi) {
    bool ok = true;
    for (const auto& p : params) {
      const WeightVector<Rational> hc = head_c(p);
      const WeightVector<Rational> hb = head_b(p);
      ok = ok && digraph_efficient(c, hc) && digraph_efficient(b, hb) && transform_vector(dm, hc) == hb;
      for (const auto& t : detail::closed_points(tail_lo(p), tail_hi)) {
        std::vector<Rational> w(hb.values());
        for (int k = 0; k < 3; ++k) w.push_back(t);
        const WeightVector<Rational> full(w);
        ok = ok && lcompl_membership(form, full) && digraph_efficient(a, full);
      }
      std::vector<Rational> out(hb.values());
      out.push_back(tail_hi + 1);
      out.push_back(tail_hi);
      out.push_back(tail_hi);
      ok = ok && !digraph_efficient(a, WeightVector<Rational>(out));
    }
    rep.add(label, ok);
  };
  check_family(
      "families: (w1,8,24,10,w5,w6,w7), 5<=w1<=18", detail::closed_points(q(5), q(18)),
      [](const Rational& w1) { return vec({w1, q(4), q(6), q(5)}); },
      [](const Rational& w1) { return vec({w1, q(8), q(24), q(10)}); },
      [](const Rational& w1) { return w1 < 8 ? w1 : q(8); }, q(24));
  check_family(
      "families: (15,2w2,32,24,w5,w6,w7), 4<=w2<=12", detail::closed_points(q(4), q(12)),
      [](const Rational& w2) { return vec({q(15), w2, q(8), q(12)}); },
      [](const Rational& w2) { return vec({q(15), Rational(2 * w2), q(32), q(24)}); },
      [](const Rational& w2) { return 2 * w2 < 15 ? Rational(2 * w2) : q(15); }, q(32));
}

inline void reproduce_three_block(ReproduceReport& rep) {
  using namespace fixtures;
  const ThreeBlockMatrix<Rational> a{upper(3, {q(2), q(3), q(1, 2)}), 6};
  const ReciprocalMatrix<Rational> m = a.matrix();
  rep.add("3-block: A[{1,2,3,4}] equals C", m.principal(IndexSet{0, 1, 2, 3}) == matrix_c());

  const auto u = vec({q(13), q(8), q(7), q(12), q(7), q(7)});
  const auto v = vec({q(13), q(8), q(7), q(7), q(12), q(7)});
  auto routes = [&](const WeightVector<Rational>& w) {
    IndexSet out;
    for (Index j = 3; j < 6; ++j) {
      if (three_block_route(a, w, j)) out.push_back(j);
    }
    return out;
  };
  const IndexSet ru = routes(u), rv = routes(v);
  const MembershipResult mu = three_block_membership(a, u), mv = three_block_membership(a, v);
  rep.add("3-block: u=(13,8,7,12,7,7) member via j=4 only", ru == IndexSet{3} && mu.member && mu.witness == Index{3},
          "routes " + detail::set_text(ru));
  rep.add("3-block: v=(13,8,7,7,12,7) member via j=5 only", rv == IndexSet{4} && mv.member && mv.witness == Index{4},
          "routes " + detail::set_text(rv));
  rep.add("3-block: u, v efficient by digraph", digraph_efficient(m, u) && digraph_efficient(m, v));
  const ReciprocalMatrix<Rational> b3 = m.principal(IndexSet{0, 1, 2});
  const auto head = vec({q(13), q(8), q(7)});
  rep.add("3-block: (13,8,7) not efficient for A[{1,2,3}]",
          !three_by_three_is_efficient(b3, head) && !digraph_efficient(b3, head));

  bool families = true;
  const BlockPerturbedForm<Rational> form = canonical_form(a.block, 6);
  for (const auto& x : detail::closed_points(q(7), q(13))) {
    for (const auto& y : {q(7), q(10), q(13)}) {
      const auto w = vec({q(13), q(8), q(7), q(12), x, y});
      families = families && digraph_efficient(m, w) && three_block_membership(a, w).member;
      for (const std::array<Index, 3>& p : {std::array<Index, 3>{1, 0, 2}, std::array<Index, 3>{1, 2, 0}}) {
        const auto pw = tail_permute(form, w, p);
        families = families && digraph_efficient(m, pw) && three_block_membership(a, pw).member;
      }
    }
  }
  rep.add("3-block: (13,8,7,12,w5,w6) families and tail permutations, 7<=w5,w6<=13", families);

  const auto red = equal_tail_reduce(form, u);
  rep.add("3-block: equal-tail reduction of u removes index 6 and keeps the verdict",
          red && red->removed == 5 && digraph_efficient(red->matrix, red->vector) == digraph_efficient(m, u));
}

inline void reproduce_pc4_examples(ReproduceReport& rep) {
  using namespace fixtures;
  const ReciprocalMatrix<Rational> a = matrix_s4_counterexample();
  const auto w = vec({q(8), q(2), q(3), q(4), q(6), q(2)});
  const auto v = vec({q(8), q(2), q(6), q(4), q(6), q(2)});
  const IndexSet pw = subvector_efficiency_profile(a, w), pv = subvector_efficiency_profile(a, v);
  rep.add("PC_4 block n=6: w=(8,2,3,4,6,2) efficient, profile {3,4}",
          digraph_efficient(a, w) && pw == detail::zero_based({3, 4}), "profile " + detail::set_text(pw));
  rep.add("PC_4 block n=6: v=(8,2,6,4,6,2) efficient, profile {3,4,6}",
          digraph_efficient(a, v) && pv == detail::zero_based({3, 4, 6}), "profile " + detail::set_text(pv));
  const auto mb = detect_minimal_block(a);
  rep.add("PC_4 block n=6: minimal block {1,2,3,4}", mb && mb->block == detail::zero_based({1, 2, 3, 4}),
          mb ? detail::set_text(mb->block) : "none");

  const ReciprocalMatrix<Rational> a7 = matrix_s4_tail_profile();
  const auto w7 = vec({q(8), q(2), q(6), q(4), q(7), q(3), q(5)});
  const IndexSet p7 = subvector_efficiency_profile(a7, w7);
  rep.add("PC_4 block n=7: w=(8,2,6,4,7,3,5) efficient, profile {5,6}",
          digraph_efficient(a7, w7) && p7 == detail::zero_based({5, 6}), "profile " + detail::set_text(p7));
  const IndexSet lead{0, 1, 2, 3};
  rep.add("PC_4 block n=7: w[{1,2,3,4}] not efficient for A[{1,2,3,4}]",
          !digraph_efficient(a7.principal(lead), w7.restrict_to(lead)));
}

inline void reproduce_constant_block(ReproduceReport& rep) {
  using namespace fixtures;
  const ConstantBlockMatrix<Rational> c5{q(3), 5, 5};
  const ReciprocalMatrix<Rational> m5 = c5.block();
  const auto i1 = extension_interval(m5, vec({q(7), q(3), q(2), q(1)}), 4);
  const auto i2 = extension_interval(m5, vec({q(7), q(3), q(2), q(7, 3)}), 4);
  rep.add("constant block: interval for (7,3,2,1,w5) is [1/3,7/3]", i1.lo == q(1, 3) && i1.hi == q(7, 3),
          "[" + to_string(i1.lo) + "," + to_string(i1.hi) + "]");
  rep.add("constant block: interval for (7,3,2,7/3,w5) is [2/3,7/3]", i2.lo == q(2, 3) && i2.hi == q(7, 3),
          "[" + to_string(i2.lo) + "," + to_string(i2.hi) + "]");

  const ConstantBlockMatrix<Rational> c8{q(3), 5, 8};
  const BlockPerturbedForm<Rational> form = canonical_form(m5, 8);
  const ReciprocalMatrix<Rational> a8 = c8.matrix();
  bool class_ok = true, ext_ok = true;
  for (const auto& [w4, lo5] : {std::pair{q(1), q(1, 3)}, std::pair{q(7, 3), q(2, 3)}}) {
    for (const auto& w5 : detail::closed_points(lo5, q(7, 3))) {
      const auto head = vec({q(7), q(3), q(2), w4, w5});
      class_ok = class_ok && constant_block_class_check(c5, head) && digraph_efficient(m5, head);
      const Rational lo = w5 < w4 ? w5 : w4;
      for (const auto& t : detail::closed_points(lo, q(7))) {
        std::vector<Rational> w(head.values());
        w.insert(w.end(), {t, lo, q(7)});
        const WeightVector<Rational> full(w);
        ext_ok = ext_ok && lcompl_membership(form, full) && digraph_efficient(a8, full);
      }
    }
  }
  rep.add("constant block: (7,3,2,1,w5) and (7,3,2,7/3,w5) in the class and efficient for C_5(3)", class_ok);
  rep.add("constant block: extensions to A_8(C_5(3)) with tails in [min{w4,w5},7] efficient", ext_ok);
}

inline void reproduce_pair(ReproduceReport& rep) {
  using namespace fixtures;
  const ReciprocalMatrix<Rational> c = matrix_c();
  const auto w = vec({q(3), q(2), q(1), q(2)});
  const auto w3 = vec({q(3), q(2), q(1)});
  const ReciprocalMatrix<Rational> c3 = c.without(3);
  rep.add("pair: (3,2,1,2) efficient for C", digraph_efficient(c, w));
  const auto verdict = is_efficient(c3, w3);
  rep.add("pair: (3,2,1) not efficient for C(4), certificate dominates",
          !verdict.efficient && !three_by_three_is_efficient(c3, w3) && verdict.dominator &&
              strictly_dominates(c3, w3, *verdict.dominator));
}

inline ReproduceReport reproduce_examples() {
  const auto start = std::chrono::steady_clock::now();
  ReproduceReport rep;
  reproduce_extension_families(rep);
  reproduce_three_block(rep);
  reproduce_pc4_examples(rep);
  reproduce_constant_block(rep);
  reproduce_pair(rep);
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pcm
