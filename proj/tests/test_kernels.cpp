#include <gtest/gtest.h>

#include <cmath>

#include "region_median/kernels.hpp"
#include "support/generators.hpp"

namespace rm = region_median;
using testing_support::Rng;

TEST(SegmentSigmaClosed, ReferenceValues) {
  EXPECT_NEAR(rm::segment_sigma_closed({0, 0}, {1, 0}, {0, 0}).value, 0.5, 1e-16);
  EXPECT_NEAR(rm::segment_sigma_closed({-1, 0}, {1, 0}, {0, 0}).value, 1.0, 1e-16);
  // sqrt(2)/2 + asinh(1)/2, confirmed to 20 digits by tests/reference/derive_values.py
  EXPECT_NEAR(rm::segment_sigma_closed({0, 0}, {1, 0}, {0, 1}).value, 1.147793574696319037, 1e-15);
}

TEST(SegmentSigmaClosed, MeanIsValueOverLength) {
  const auto s = rm::segment_sigma_closed({1, 2}, {4, 6}, {0, 0});
  EXPECT_DOUBLE_EQ(s.segment_length, 5.0);
  EXPECT_DOUBLE_EQ(s.mean, s.value / 5.0);
}

TEST(SegmentSigmaClosed, DegenerateSegment) {
  const auto s = rm::segment_sigma_closed({1, 1}, {1, 1}, {0, 0});
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.segment_length, 0.0);
}

TEST(SegmentSigmaClosed, CollinearBranchMatchesPiecewiseLinear) {
  // x on the segment's line, outside and inside.
  EXPECT_NEAR(rm::segment_sigma_closed({1, 0}, {3, 0}, {0, 0}).value, 4.0, 1e-15);
  EXPECT_NEAR(rm::segment_sigma_closed({0, 0}, {4, 0}, {1, 0}).value, 0.5 + 4.5, 1e-15);
  // Just off the line the result is continuous.
  EXPECT_NEAR(rm::segment_sigma_closed({0, 0}, {4, 0}, {1, 1e-13}).value, 5.0, 1e-14);
  EXPECT_NEAR(rm::segment_sigma_closed({0, 0}, {4, 0}, {1, 1e-9}).value, 5.0, 1e-14);
}

TEST(SegmentSigmaClosed, ReversalSymmetric) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const rm::Point2 a = rng.point(-2, 2), b = rng.point(-2, 2), x = rng.point(-2, 2);
    const double u = rm::segment_sigma_closed(a, b, x).value;
    const double v = rm::segment_sigma_closed(b, a, x).value;
    EXPECT_NEAR(u, v, 1e-14 * u);
  }
}

TEST(SegmentSigmaClosed, SplittingIsAdditive) {
  Rng rng(22);
  for (int k = 0; k < 200; ++k) {
    const rm::Point2 a = rng.point(-2, 2), b = rng.point(-2, 2), x = rng.point(-2, 2);
    const rm::Point2 m = a + (b - a) * rng.uniform(0.05, 0.95);
    const double whole = rm::segment_sigma_closed(a, b, x).value;
    const double parts = rm::segment_sigma_closed(a, m, x).value + rm::segment_sigma_closed(m, b, x).value;
    EXPECT_NEAR(whole, parts, 1e-13 * whole);
  }
}

TEST(SegmentSigmaQuadrature, AgreesWithClosedFormForEuclidean) {
  const auto k = rm::RadialKernel::euclidean();
  for (const auto& [a, b, x] : {std::tuple{rm::Point2{0, 0}, rm::Point2{1, 0}, rm::Point2{0, 0}},
                                std::tuple{rm::Point2{-1, 0}, rm::Point2{1, 0}, rm::Point2{0, 0}},
                                std::tuple{rm::Point2{0, 0}, rm::Point2{1, 0}, rm::Point2{0, 1}}}) {
    const double q = rm::segment_sigma_quadrature(a, b, x, k, 1e-14).value;
    const double c = rm::segment_sigma_closed(a, b, x).value;
    EXPECT_NEAR(q, c, 1e-12 * c);
  }
}

TEST(SegmentSigmaQuadrature, PowerLawValues) {
  EXPECT_NEAR(rm::segment_sigma({0, 0}, {1, 0}, {0, 0}, rm::RadialKernel::power_law(2)).value, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(rm::segment_sigma({2, 2}, {2, 2}, {0, 0}, rm::RadialKernel::power_law(1)).value, 0.0);
  // p = 1 is the Euclidean kernel through the generic path.
  const double g = rm::segment_sigma({0, 0}, {1, 0}, {0, 1}, rm::RadialKernel::power_law(1)).value;
  EXPECT_NEAR(g, 1.147793574696319037, 1e-13);
  // int_0^1 t^3 dt
  EXPECT_NEAR(rm::segment_sigma({0, 0}, {1, 0}, {0, 0}, rm::RadialKernel::power_law(3)).value, 0.25, 1e-14);
}

TEST(SegmentSigmaQuadrature, CustomConstantKernelGivesLength) {
  const auto one = rm::RadialKernel::custom([](rm::Vector2) { return 1.0; });
  EXPECT_NEAR(rm::segment_sigma({0, 0}, {3, 4}, {7, 7}, one).value, 5.0, 1e-13);
}

TEST(RadialKernel, Validation) {
  EXPECT_THROW(rm::RadialKernel::power_law(0.0), rm::InvalidKernel);
  EXPECT_THROW(rm::RadialKernel::power_law(-1.0), rm::InvalidKernel);
  EXPECT_THROW(rm::RadialKernel::power_law(NAN), rm::InvalidKernel);
  EXPECT_THROW(rm::RadialKernel::custom({}), rm::InvalidKernel);
  EXPECT_THROW(rm::RadialKernel::custom([](rm::Vector2 v) { return 1.0 / v.norm(); }), rm::InvalidKernel);
}

TEST(RadialKernel, ConvexityFlag) {
  EXPECT_TRUE(rm::RadialKernel::euclidean().convex());
  EXPECT_TRUE(rm::RadialKernel::power_law(1.0).convex());
  EXPECT_TRUE(rm::RadialKernel::power_law(3.0).convex());
  EXPECT_FALSE(rm::RadialKernel::power_law(0.5).convex());
  EXPECT_FALSE(rm::RadialKernel::custom([](rm::Vector2 v) { return v.norm(); }).convex());
}

TEST(RadialKernel, Evaluation) {
  EXPECT_DOUBLE_EQ(rm::RadialKernel::euclidean()({3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(rm::RadialKernel::power_law(2)({3, 4}), 25.0);
  EXPECT_NEAR(rm::RadialKernel::power_law(0.5)({3, 4}), std::sqrt(5.0), 1e-15);
}

TEST(SegmentSigmaClosed, SimilarityScaling) {
  Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    const rm::Point2 a = rng.point(-2, 2), b = rng.point(-2, 2), x = rng.point(-2, 2);
    const rm::Similarity s{rng.uniform(0.01, 100), rng.uniform(-4, 4), {rng.uniform(-50, 50), rng.uniform(-50, 50)}};
    const double v = rm::segment_sigma_closed(a, b, x).value;
    const double w = rm::segment_sigma_closed(s(a), s(b), s(x)).value;
    EXPECT_NEAR(w, s.scale * s.scale * v, 1e-12 * w);
  }
}

TEST(SegmentSigmaClosed, MeanBetweenNearestAndFarthestDistance) {
  Rng rng(24);
  for (int k = 0; k < 500; ++k) {
    const rm::Point2 a = rng.point(-2, 2), b = rng.point(-2, 2), x = rng.point(-2, 2);
    const rm::Vector2 e = b - a;
    const double t = std::clamp(rm::dot(x - a, e) / rm::dot(e, e), 0.0, 1.0);
    const double nearest = rm::distance(x, a + e * t);
    const double mean = rm::segment_sigma_closed(a, b, x).mean;
    EXPECT_GE(mean, nearest * (1 - 1e-14));
    EXPECT_LE(mean, std::max(rm::distance(a, x), rm::distance(b, x)) * (1 + 1e-14));
  }
}
