#include <gtest/gtest.h>

#include "support.hpp"

using namespace pcm;
using namespace pcm::testing;
using fixtures::matrix_c;
using fixtures::vec;

TEST(Grid, FindsDominatorForInefficientExample) {
  const auto c3 = matrix_c().without(3);
  const auto w = vec({q(3), q(2), q(1)});
  const auto found = grid_dominator_search(c3, w, GridSpec{2.0, 8});
  ASSERT_TRUE(found);
  EXPECT_TRUE(strictly_dominates(c3.to_double_matrix(), w.to_double_vector(), *found, Tolerances{}));
}

TEST(Grid, NothingBeatsAColumn) {
  const auto a = matrix_c();
  EXPECT_FALSE(grid_dominator_search(a, column(a, 2)));
  const auto cons = ReciprocalMatrix<Rational>::consistent_from(vec({q(4), q(2), q(1)}));
  EXPECT_FALSE(grid_dominator_search(cons, column(cons, 0), GridSpec{2.0, 8}));
}

TEST(Grid, EfficientInstancesHaveNoLatticeDominator) {
  Rng rng(103);
  for (int t = 0; t < 200; ++t) {
    const Index n = 3 + t % 2;
    const auto a = random_reciprocal(n, rng, 4);
    const auto w = random_efficient(a, rng);
    ASSERT_TRUE(digraph_efficient(a, w));
    EXPECT_FALSE(grid_dominator_search(a, w, GridSpec{2.0, 4}));
  }
}

TEST(Grid, Guards) {
  const auto a = ReciprocalMatrix<Rational>::ones(8);
  const auto w = column(a, 0);
  try {
    grid_dominator_search(a, w, GridSpec{2.0, 6, 1e6});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::grid_too_large);
  }
  EXPECT_THROW(grid_dominator_search(a, w, GridSpec{1.0, 2}), Error);
  EXPECT_THROW(grid_dominator_search(a, vec({q(1)}), GridSpec{}), Error);
}

TEST(Oracle, InstancesAreValid) {
  Rng rng(107);
  for (int t = 0; t < 50; ++t) {
    auto [a, w] = random_oracle_instance(4, rng);
    EXPECT_EQ(a.size(), 4u);
    EXPECT_EQ(w.size(), 4u);
    EXPECT_NO_THROW(ReciprocalMatrix<Rational>::validate(a.to_grid()));
  }
}

TEST(Oracle, SmallRunsAgree) {
  Rng rng(109);
  for (Index n : {2, 3, 4}) {
    const auto rep = exhaustive_small_equivalence(60, n, rng);
    EXPECT_TRUE(rep.contradictions.empty()) << rep.contradictions.front();
    EXPECT_EQ(rep.efficient + rep.inefficient, 60u);
  }
}
