#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "region_median/solver.hpp"
#include "region_median/weiszfeld.hpp"
#include "support/generators.hpp"

namespace rm = region_median;
using testing_support::Rng;

TEST(Weiszfeld, EquilateralVerticesGiveCentre) {
  const auto r = rm::weiszfeld(rm::PointSet({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}));
  EXPECT_TRUE(r.converged());
  EXPECT_LT(rm::distance(r.median, {0.5, std::sqrt(3.0) / 6}), 1e-12);
}

TEST(Weiszfeld, CollinearTripleGivesMiddle) {
  const auto r = rm::weiszfeld(rm::PointSet({{0, 0}, {1, 0}, {2, 0}}));
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.median, (rm::Point2{1, 0}));
}

TEST(Weiszfeld, ObtuseTripleGivesObtuseVertex) {
  const rm::PointSet ps({{0, 0}, {1, 0}, {0.5, 0.05}});
  const auto r = rm::weiszfeld(ps);
  EXPECT_TRUE(r.converged());
  EXPECT_EQ(r.median, (rm::Point2{0.5, 0.05}));
  EXPECT_EQ(r.normalized_norm, 0.0);

  // Brute-force check of the optimum on a grid around it.
  double best = INFINITY;
  rm::Point2 arg;
  for (int i = -200; i <= 200; ++i) {
    for (int j = -200; j <= 200; ++j) {
      const rm::Point2 p{0.5 + i * 1e-3, 0.05 + j * 1e-3};
      const double v = ps.objective(p);
      if (v < best) {
        best = v;
        arg = p;
      }
    }
  }
  EXPECT_LT(rm::distance(arg, r.median), 1e-12);
}

TEST(Weiszfeld, HeavyWeightPinsMedianToPoint) {
  const auto r = rm::weiszfeld(rm::PointSet({{0, 0}, {1, 0}, {0, 1}, {5, 5}}, std::vector<double>{10, 1, 1, 1}));
  EXPECT_EQ(r.median, (rm::Point2{0, 0}));
}

TEST(Weiszfeld, StartingOnAVertexStepsOff) {
  // Weighted centroid lands on the data point (1, 0), which is not optimal.
  const auto r = rm::weiszfeld(rm::PointSet({{0, 0}, {2, 0}, {1, 0}, {1, 3}, {1, -3}}, std::vector<double>{1, 1, 1, 3, 1}));
  EXPECT_TRUE(r.converged());
  EXPECT_GT(r.median.y, 0.0);
}

TEST(Weiszfeld, ObjectiveNeverIncreases) {
  Rng rng(61);
  for (int k = 0; k < 20; ++k) {
    std::vector<rm::Point2> pts;
    std::vector<double> w;
    const int n = rng.integer(2, 60);
    for (int i = 0; i < n; ++i) {
      pts.push_back(rng.point(-5, 5));
      w.push_back(rng.uniform(0.1, 3));
    }
    const auto r = rm::weiszfeld(rm::PointSet(pts, w));
    EXPECT_TRUE(r.converged());
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
      EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] * (1 + 1e-13));
    }
  }
}

TEST(Weiszfeld, PermutationInvariant) {
  Rng rng(62);
  std::mt19937_64 shuffle_rng(5);
  for (int k = 0; k < 10; ++k) {
    std::vector<rm::Point2> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(rng.point(-5, 5));
    const auto a = rm::weiszfeld(rm::PointSet(pts));
    std::shuffle(pts.begin(), pts.end(), shuffle_rng);
    const auto b = rm::weiszfeld(rm::PointSet(pts));
    EXPECT_LT(rm::distance(a.median, b.median), 1e-10);
  }
}

TEST(Weiszfeld, RigidMotionEquivariant) {
  Rng rng(63);
  for (int k = 0; k < 10; ++k) {
    std::vector<rm::Point2> pts, moved;
    const rm::Similarity s{1.0, rng.uniform(-3, 3), {rng.uniform(-9, 9), rng.uniform(-9, 9)}};
    for (int i = 0; i < 25; ++i) {
      pts.push_back(rng.point(-5, 5));
      moved.push_back(s(pts.back()));
    }
    const auto a = rm::weiszfeld(rm::PointSet(pts));
    const auto b = rm::weiszfeld(rm::PointSet(moved));
    EXPECT_LT(rm::distance(s(a.median), b.median), 1e-9);
  }
}

TEST(Weiszfeld, Validation) {
  EXPECT_THROW(rm::PointSet({}), rm::Error);
  EXPECT_THROW(rm::PointSet({{0, 0}}, std::vector<double>{1, 2}), rm::Error);
  EXPECT_THROW(rm::PointSet({{0, 0}}, std::vector<double>{0}), rm::Error);
  EXPECT_THROW(rm::weiszfeld(rm::PointSet({{0, 0}}), 0.0), rm::Error);
  const auto single = rm::weiszfeld(rm::PointSet({{3, 4}}));
  EXPECT_EQ(single.median, (rm::Point2{3, 4}));
}

TEST(Weiszfeld, MaxIterFlagged) {
  std::vector<rm::Point2> pts;
  Rng rng(64);
  for (int i = 0; i < 50; ++i) pts.push_back(rng.point(-5, 5));
  const auto r = rm::weiszfeld(rm::PointSet(pts), 1e-12, 2);
  EXPECT_EQ(r.status, rm::SolveStatus::max_iter_exceeded);
}

TEST(RegionSampling, SquareIsCentred) {
  const rm::Polygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_LT(rm::distance(rm::region_median_by_sampling(sq, 64), {0.5, 0.5}), 1e-3);
}

TEST(RegionSampling, Triangle345AgreesWithContinuousSolver) {
  const rm::Polygon t({{0, 0}, {4, 0}, {0, 3}});
  const rm::Point2 m = rm::solve_median(t).median;
  EXPECT_LT(rm::distance(rm::region_median_by_sampling(t, 256), m), 1e-3);
}

TEST(RegionSampling, ErrorShrinksWithResolution) {
  // The lattice error is not monotone point to point, so check the trend:
  // least-squares slope of log error against log grid_n.
  const rm::Polygon t({{0, 0}, {4, 0}, {0, 3}});
  const rm::Point2 m = rm::solve_median(t).median;
  std::vector<double> lx, ly;
  for (int n = 16; n <= 256; n *= 2) {
    lx.push_back(std::log(double(n)));
    ly.push_back(std::log(rm::distance(rm::region_median_by_sampling(t, n), m)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i] / lx.size();
    my += ly[i] / ly.size();
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  EXPECT_LE(sxy / sxx, -1.0);
}

TEST(RegionSampling, Validation) {
  const rm::Polygon t({{0, 0}, {4, 0}, {0, 3}});
  EXPECT_THROW(rm::region_median_by_sampling(t, 1), rm::Error);
  // Thin L along two sides of its bounding box; misses every 2x2 cell centre.
  const rm::Polygon sliver({{0, 0}, {1, 0}, {1, 1}, {0.99, 1}, {0.99, 0.01}, {0, 0.01}});
  EXPECT_THROW(rm::region_median_by_sampling(sliver, 2), rm::EmptySample);
}
