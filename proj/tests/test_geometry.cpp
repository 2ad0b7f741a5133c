#include <gtest/gtest.h>

#include <cmath>

#include "certirate/errors.hpp"
#include "certirate/geometry.hpp"
#include "support/generators.hpp"
#include "support/set_catalog.hpp"

namespace certirate {
namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

const LpSpace kPlane(2, 2.0);

TEST(ConvexSet, ConstructorsValidate) {
  EXPECT_THROW(make_box(vec({0, 1}), vec({1, 0})), ParameterError);
  EXPECT_THROW(make_box(vec({0}), vec({1, 2})), ShapeError);
  EXPECT_THROW(make_ball(vec({0, 0}), -1.0), ParameterError);
  EXPECT_THROW(make_halfspace(vec({0, 0}), 1.0), ParameterError);
  EXPECT_EQ(set_dimension(centered_box(3, 1.0)), 3);
  EXPECT_TRUE(contains(centered_box(2, 1.0), vec({1, -1})));
  EXPECT_FALSE(contains(make_halfspace(vec({1, 0}), 0.5), vec({1, 0})));
}

TEST(Project, Examples) {
  const ConvexSet box = make_box(vec({0, 0}), vec({1, 1}));
  EXPECT_EQ(project(kPlane, box, vec({2, -1})), vec({1, 0}));
  const Vector p = project(kPlane, make_ball(vec({0, 0}), 1.0), vec({3, 4}));
  EXPECT_NEAR(p(0), 0.6, 1e-15);
  EXPECT_NEAR(p(1), 0.8, 1e-15);
  EXPECT_EQ(project(kPlane, box, vec({0.3, 0.7})), vec({0.3, 0.7}));
  const Vector h = project(kPlane, make_halfspace(vec({0, 2}), 2.0), vec({5, 3}));
  EXPECT_NEAR(h(0), 5.0, 1e-15);
  EXPECT_NEAR(h(1), 1.0, 1e-15);
}

TEST(Project, RequiresHilbertModel) {
  EXPECT_THROW(project(LpSpace(2, 3.0), centered_box(2, 1.0), vec({2, 0})), UnsupportedRetractionError);
  EXPECT_THROW(Retraction(centered_box(2, 1.0), LpSpace(2, 4.0)), UnsupportedRetractionError);
  EXPECT_THROW(project(kPlane, centered_box(3, 1.0), vec({2, 0})), ShapeError);
}

TEST(Hausdorff, Examples) {
  const ConvexSet box = make_box(vec({0, 0}), vec({1, 1}));
  EXPECT_EQ(hausdorff_distance(box, box), 0.0);
  EXPECT_NEAR(hausdorff_distance(make_box(vec({0}), vec({1})), make_box(vec({0.05}), vec({1.05}))), 0.05, 1e-15);
  EXPECT_NEAR(hausdorff_distance(make_ball(vec({0, 0}), 1.0), make_ball(vec({0, 0}), 1.2)), 0.2, 1e-15);
  EXPECT_THROW(hausdorff_distance(box, make_ball(vec({0, 0}), 1.0)), NotComputableError);
}

TEST(Hausdorff, BoxDistanceIsEuclideanInThePlane) {
  const ConvexSet inner = centered_box(2, 1.0);
  const ConvexSet outer = centered_box(2, 1.1);
  EXPECT_NEAR(hausdorff_distance(inner, outer), 0.1 * std::sqrt(2.0), 1e-12);
}

TEST(Hausdorff, PropertyMatchesDenseSampling) {
  testing::Gen gen(61);
  HStarOptions options;
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = gen.integer(1, 2);
    const ConvexSet p = testing::random_box(gen, dim);
    const ConvexSet q = testing::random_box(gen, dim);
    const double h = hausdorff_distance(p, q);
    double sampled = 0.0;
    for (const auto& [from, to] : {std::pair{&p, &q}, std::pair{&q, &p}}) {
      for (const Vector& x : sample_points(*from, 0.05, options)) {
        sampled = std::max(sampled, (x - project(LpSpace(dim, 2.0), *to, x)).norm());
      }
    }
    EXPECT_LE(sampled, h + 1e-12);
    EXPECT_GE(sampled, h - 1e-9);
  }
}

TEST(HStar, Examples) {
  const ConvexSet unit = make_box(vec({0}), vec({1}));
  EXPECT_TRUE(hstar_check(unit, unit, 1e-3));
  EXPECT_TRUE(hstar_check(unit, make_box(vec({0.05}), vec({1.05})), 0.1));
  EXPECT_FALSE(hstar_check(unit, make_box(vec({0.5}), vec({2})), 0.4));
  EXPECT_THROW(hstar_check(unit, unit, 0.0), ParameterError);
}

TEST(HStar, SampledPairsWithoutClosedForm) {
  const ConvexSet box = centered_box(2, 1.0);
  EXPECT_TRUE(hstar_check(box, make_ball(vec({0, 0}), std::sqrt(2.0)), 0.5));
  EXPECT_FALSE(hstar_check(box, make_ball(vec({0, 0}), 3.0), 0.5));
}

TEST(HStar, PropertyMonotoneInRadius) {
  testing::Gen gen(67);
  HStarOptions options;
  options.max_grid_points = 256;
  options.random_samples = 32;
  for (int trial = 0; trial < 40; ++trial) {
    const ConvexSet p = testing::random_set(gen, 2);
    const ConvexSet q = testing::random_set(gen, 2);
    bool seen = false;
    for (double a : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const bool now = hstar_check(p, q, a, options);
      if (seen) EXPECT_TRUE(now) << "a=" << a;
      seen = seen || now;
    }
  }
}

TEST(Retraction, PropertySunnyAndNonexpansive) {
  testing::Gen gen(71);
  for (int i = 0; i < 1000; ++i) {
    const int dim = gen.integer(1, 4);
    const Retraction q(testing::random_set(gen, dim), LpSpace(dim, 2.0));
    const Vector x = gen.vector(dim, 5.0);
    const Vector z = gen.vector(dim, 5.0);
    const Vector y = testing::random_member(gen, q.target);
    EXPECT_LE(sunny_residual(q, x, y), 1e-12 * (1.0 + x.squaredNorm()));
    EXPECT_LE((q(x) - q(z)).norm(), (x - z).norm() + 1e-12);
    EXPECT_LE((q(q(x)) - q(x)).norm(), 1e-12 * (1.0 + q(x).norm()));
  }
}

TEST(SunnyHaus, Examples) {
  const auto linear = [](double, double e) { return e; };
  const auto t = sunnyhaus_threshold(linear, 1.0, 1.0, 0.7);
  EXPECT_DOUBLE_EQ(t.R, 7.0);
  EXPECT_NEAR(t.a, 0.1, 1e-15);
  EXPECT_EQ(sunnyhaus_threshold(linear, 1.0, 1.0, 100.0).a, 1.0);
  EXPECT_THROW(sunnyhaus_threshold(linear, 0.0, 1.0, 1.0), ParameterError);
}

TEST(SunnyHaus, PropertyTwoRetractionBound) {
  testing::Gen gen(73);
  const auto linear = [](double, double e) { return e; };
  for (int trial = 0; trial < 100; ++trial) {
    const double eps = gen.log_uniform(1e-3, 1.0);
    const auto t = sunnyhaus_threshold(linear, 1.0, 1.0, eps);
    const int dim = gen.integer(1, 3);
    const auto [p, q] = testing::random_box_pair(gen, dim, t.a, 1.0);
    const LpSpace space(dim, 2.0);
    for (int i = 0; i < 50; ++i) {
      Vector x = gen.vector(dim, 1.0);
      if (x.norm() > 1.0) x /= x.norm();
      EXPECT_LE((project(space, p, x) - project(space, q, x)).squaredNorm(), eps);
    }
  }
}

}  // namespace
}  // namespace certirate
