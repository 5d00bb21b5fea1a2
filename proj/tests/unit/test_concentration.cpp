#include <gtest/gtest.h>

#include <cmath>

#include "specgraph/concentration.hpp"
#include "specgraph/error.hpp"
#include "specgraph/graph.hpp"
#include "test_support.hpp"

using namespace specgraph;

namespace {

// Reference quantiles computed at 30 significant digits with an independent
// root finder on the tail equation, then rounded to double.
struct QuantileCase {
  double v;
  int n;
  double alpha;
  double q;
};

constexpr QuantileCase kFrozen[] = {
    {39.7, 200, 0.05, 29.876168271048034962},
    {39.7, 200, 0.1, 28.57535958370634559},
    {29.79, 200, 0.1, 25.165641916680778727},
    {0.0, 200, 0.05, 5.9914645471079819869},
    {10.0, 200, 0.05, 16.73321196482387194},
    {40.0, 200, 0.05, 29.976283741375600409},
};

}  // namespace

TEST(VarianceProxy, TwoBlock) {
  const auto m = build_probability_matrix(SbmSpec::equal_blocks(200, 2, 0.3, 0.1));
  const VarianceProxy vp = variance_proxy(m.P);
  // 99 * 0.21 + 100 * 0.09
  EXPECT_NEAR(vp.v, 29.79, 1e-10);
  EXPECT_DOUBLE_EQ(vp.p_max, 0.3);
}

TEST(VarianceProxy, DegenerateMatrices) {
  EXPECT_EQ(variance_proxy(Matrix::Zero(5, 5)).v, 0.0);
  Matrix ones = Matrix::Ones(5, 5);
  ones.diagonal().setZero();
  EXPECT_EQ(variance_proxy(ones).v, 0.0);
  EXPECT_EQ(variance_proxy(ones).p_max, 1.0);
}

TEST(VarianceProxy, BoundedByDegree) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Matrix P = testsupport::random_probability(rng, testsupport::uniform_int(rng, 2, 40));
    const double v = variance_proxy(P).v;
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, P.rowwise().sum().maxCoeff() + 1e-12);
  }
}

TEST(DeviationQuantile, FrozenValues) {
  for (const auto& c : kFrozen) {
    const DeviationQuantile dq = deviation_quantile(c.v, c.n, c.alpha);
    EXPECT_NEAR(dq.q, c.q, 1e-12 * c.q) << "v=" << c.v << " alpha=" << c.alpha;
    EXPECT_EQ(dq.method, "bernstein_explicit");
    EXPECT_EQ(dq.n, c.n);
  }
}

TEST(DeviationQuantile, TailEqualsLevel) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const double v = testsupport::uniform(rng, 0.0, 500.0);
    const int n = testsupport::uniform_int(rng, 2, 5000);
    const double alpha = testsupport::uniform(rng, 1e-6, 0.99);
    const double q = deviation_quantile(v, n, alpha).q;
    EXPECT_NEAR(bernstein_tail(q, v, n), alpha, 1e-9 * alpha);
  }
}

TEST(DeviationQuantile, Monotonicity) {
  const double base = deviation_quantile(20, 100, 0.05).q;
  EXPECT_GT(deviation_quantile(21, 100, 0.05).q, base);
  EXPECT_GT(deviation_quantile(20, 101, 0.05).q, base);
  EXPECT_GT(deviation_quantile(20, 100, 0.04).q, base);
  EXPECT_LT(deviation_quantile(20, 100, 0.06).q, base);
}

TEST(DeviationQuantile, RejectsBadLevel) {
  for (double a : {0.0, 1.0, -0.1, 1.5, std::nan("")}) {
    try {
      deviation_quantile(1.0, 10, a);
      ADD_FAILURE() << a;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadLevel);
    }
  }
}

TEST(BernsteinTail, Shape) {
  EXPECT_NEAR(bernstein_tail(0.0, 1.0, 10), 20.0, 1e-12);
  EXPECT_LT(bernstein_tail(50.0, 1.0, 10), 1e-20);
}

TEST(DavisKahanRadius, WorkedExample) {
  const auto r = davis_kahan_radius(29.876168271048034962, 20.0);
  EXPECT_NEAR(r.r, 2.9876168271048035, 1e-14);
  EXPECT_FALSE(r.informative);
  const auto small = davis_kahan_radius(1.0, 20.0);
  EXPECT_DOUBLE_EQ(small.r, 0.1);
  EXPECT_TRUE(small.informative);
}

TEST(DavisKahanRadius, RejectsNonpositiveGap) {
  for (double g : {0.0, -1.0}) {
    try {
      davis_kahan_radius(1.0, g);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NonpositiveGap);
    }
  }
}
