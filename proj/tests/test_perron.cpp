#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcm;
using namespace pcm::testing;
using fixtures::upper;
using fixtures::vec;

namespace {

ReciprocalMatrix<double> three_block_double(double a12, double a13, double a23, Index n) {
  return ReciprocalMatrix<double>::block_perturbed(ReciprocalMatrix<double>::from_upper(3, std::vector<double>{a12, a13, a23}), n);
}

}  // namespace

TEST(Perron, ConsistentHasLambdaN) {
  const auto a = ReciprocalMatrix<Rational>::consistent_from(vec({q(4), q(2), q(1), q(3)}));
  const auto r = perron(a);
  EXPECT_NEAR(r.lambda, 4.0, 1e-10);
  EXPECT_DOUBLE_EQ(r.w[3], 1.0);
  EXPECT_NEAR(r.w[0], 4.0 / 3.0, 1e-10);
  EXPECT_LT(r.residual, 1e-10);
}

TEST(Perron, LambdaAtLeastN) {
  Rng rng(73);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 7;
    const auto r = perron(random_reciprocal(n, rng));
    EXPECT_GE(r.lambda, static_cast<double>(n) - 1e-9);
    for (const double x : r.w) EXPECT_GT(x, 0.0);
  }
}

TEST(Perron, TailEntriesEqual) {
  Rng rng(79);
  for (int t = 0; t < 100; ++t) {
    const Index s = 2 + t % 4, n = s + 1 + t % 5;
    const auto form = canonical_form(random_reciprocal(s, rng), n);
    const auto r = perron(form.canonical());
    const auto ts = perron_tail_structure(form, r);
    EXPECT_TRUE(ts.ok);
    EXPECT_EQ(ts.vacuous, n == s + 1);
    for (Index i = s + 1; i < n; ++i) EXPECT_NEAR(r.w[i], r.w[s], 1e-10 * r.w[s]);
  }
}

TEST(Perron, SubmatrixDecidesEfficiency) {
  Rng rng(83);
  for (int t = 0; t < 150; ++t) {
    const Index s = 2 + t % 4, n = s + 1 + t % 5;
    const auto form = canonical_form(random_reciprocal(s, rng), n);
    const auto r = perron(form.canonical());
    const auto full = is_efficient(form.canonical().to_double_matrix(), r.w);
    EXPECT_EQ(perron_efficiency_via_submatrix(form, r).efficient, full.efficient);
  }
}

TEST(Perron, SimilarityCovariance) {
  Rng rng(89);
  for (int t = 0; t < 60; ++t) {
    const Index n = 3 + t % 5;
    const auto a = random_reciprocal(n, rng);
    const auto m = random_similarity(n, rng);
    const auto ra = perron(a);
    const auto rb = perron(apply_similarity(a, m));
    EXPECT_NEAR(ra.lambda, rb.lambda, 1e-9 * ra.lambda);
    std::vector<double> mapped(n);
    for (Index i = 0; i < n; ++i) mapped[i] = m.diag[m.perm[i]].get_d() * ra.w[m.perm[i]];
    for (Index i = 0; i < n; ++i) EXPECT_NEAR(mapped[i] / mapped[n - 1], rb.w[i], 1e-9 * rb.w[i]);
  }
}

TEST(ThreeBlockConditions, Examples) {
  EXPECT_EQ(three_block_sufficient(upper(3, {q(2), q(6), q(4)})).matched, PerronCondition::cond1);
  EXPECT_EQ(three_block_sufficient(upper(3, {q(3), q(2), q(1, 2)})).matched, PerronCondition::cond2);
  EXPECT_EQ(three_block_sufficient(upper(3, {q(1, 2), q(2), q(3)})).matched, PerronCondition::cond3);
  EXPECT_EQ(three_block_sufficient(upper(3, {q(2), q(17, 2), q(2)})).matched, PerronCondition::none);
  EXPECT_EQ(three_block_sufficient(upper(3, {q(1), q(1), q(1)})).matched, PerronCondition::cond1);
  const auto c = three_block_sufficient(upper(3, {q(2), q(6), q(4)}));
  EXPECT_EQ(c.q, q(-2));
  try {
    three_block_sufficient(upper(3, {q(2), q(1, 2), q(4)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_normalized);
  }
}

TEST(ThreeBlockConditions, ConditionImpliesEfficientForAllN) {
  for (Index n = 4; n <= 10; ++n) {
    const auto a = three_block_double(2.0, 6.0, 4.0, n);
    const auto r = perron(a);
    EXPECT_TRUE(is_efficient(a, r.w).efficient) << n;
    const IndexSet lead{0, 1, 2, 3};
    const auto g = build_digraph(a.principal(lead), r.w.restrict_to(lead));
    const auto cycles = present_condition_cycles(g);
    EXPECT_NE(std::find(cycles.begin(), cycles.end(), condition_cycle(PerronCondition::cond1)), cycles.end());
  }
}

TEST(ThreeBlockConditions, RandomMatchesAreEfficient) {
  Rng rng(97);
  int matched = 0;
  for (int t = 0; t < 400; ++t) {
    const Index n = 4 + t % 5;
    const ThreeBlockMatrix<double> tb{ReciprocalMatrix<double>::from_upper(
                                          3, std::vector<double>{log_uniform(rng, 1.0 / 9, 9), log_uniform(rng, 1, 9),
                                                                 log_uniform(rng, 1.0 / 9, 9)}),
                                      n};
    const auto c = three_block_sufficient(tb.block);
    if (c.matched == PerronCondition::none) continue;
    ++matched;
    const auto a = tb.matrix();
    EXPECT_TRUE(is_efficient(a, perron(a).w).efficient);
  }
  EXPECT_GT(matched, 100);
}

TEST(ThreeBlockConditions, IdentityResidualsVanish) {
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const ThreeBlockMatrix<Rational> tb{random_reciprocal(3, rng), Index(4 + t % 6)};
    const auto r = perron(tb.matrix());
    const double scale = r.lambda * *std::max_element(r.w.begin(), r.w.end());
    for (const double x : three_block_identity_residuals(tb, r)) EXPECT_LE(std::abs(x), 1e-8 * scale);
  }
}

TEST(ConstantBlockPerron, Examples) {
  const auto rep = constant_block_perron_check(ConstantBlockMatrix<Rational>{q(3), 5, 8});
  EXPECT_TRUE(rep.verdict.efficient);
  EXPECT_EQ(rep.cycle, (std::vector<Index>{6, 5, 4, 3, 2, 1, 6}));
  EXPECT_FALSE(rep.reversed);

  const auto flat = constant_block_perron_check(ConstantBlockMatrix<Rational>{q(1), 3, 5});
  for (const double x : flat.w) EXPECT_NEAR(x, 1.0, 1e-12);

  const auto rev = constant_block_perron_check(ConstantBlockMatrix<Rational>{q(1, 4), 3, 5});
  EXPECT_TRUE(rev.reversed);
  const auto a = ConstantBlockMatrix<Rational>{q(1, 4), 3, 5}.matrix().to_double_matrix();
  EXPECT_TRUE(is_efficient(a, rev.w).efficient);
  const auto direct = perron(a);
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(direct.w[i], rev.w[i], 1e-9 * direct.w[i]);

  EXPECT_THROW(constant_block_perron_check(ConstantBlockMatrix<Rational>{q(2), 4, 4}), Error);
}

TEST(Analyze, ReportsStructureAndCycles) {
  const auto a = ReciprocalMatrix<Rational>::block_perturbed(upper(3, {q(2), q(8), q(2)}), 6);
  const auto rep = analyze_perron(a);
  EXPECT_TRUE(rep.efficient);
  ASSERT_TRUE(rep.block_size);
  EXPECT_EQ(*rep.block_size, 3u);
  EXPECT_TRUE(rep.structure_ok);
  ASSERT_TRUE(rep.sufficient_condition);
  EXPECT_EQ(*rep.sufficient_condition, PerronCondition::none);
  const std::vector<Index> want{1, 4, 3, 2, 1};
  EXPECT_NE(std::find(rep.cycles.begin(), rep.cycles.end(), want), rep.cycles.end());

  const auto bad = analyze_perron(ReciprocalMatrix<Rational>::block_perturbed(upper(3, {q(2), q(17, 2), q(2)}), 6));
  EXPECT_FALSE(bad.efficient);
  EXPECT_TRUE(bad.cycles.empty());
  EXPECT_TRUE(bad.verdict.dominator);

  const auto cons = analyze_perron(ReciprocalMatrix<Rational>::ones(4));
  EXPECT_TRUE(cons.efficient);
  EXPECT_FALSE(cons.sufficient_condition);
}
