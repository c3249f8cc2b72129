#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "emknot/errors.hpp"
#include "emknot/quadrature.hpp"

namespace emknot {
namespace {

using std::numbers::pi;

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
  const GaussLegendre g = gauss_legendre(10);
  for (int d = 0; d < 20; ++d) {
    double s = 0.0;
    for (int i = 0; i < 10; ++i) s += g.weights[i] * std::pow(g.nodes[i], d);
    EXPECT_NEAR(s, d % 2 ? 0.0 : 2.0 / (d + 1), 1e-14) << "degree " << d;
  }
  EXPECT_TRUE(std::is_sorted(g.nodes.begin(), g.nodes.end()));
}

TEST(Quadrature, VolumeAndOddMoment) {
  const QuadratureGrid grid(GridSize{});
  const auto r = integrate<2>(grid, [](const S3Point& p) { return std::array<double, 2>{1.0, p[3]}; });
  EXPECT_NEAR(r[0], 2 * pi * pi, 1e-13);
  EXPECT_NEAR(r[1], 0.0, 1e-13);
}

// Integral of w1^2a w2^2b w3^2c w4^2d over the unit S^3.
double sphere_moment(int a, int b, int c, int d) {
  return 2.0 * std::tgamma(a + 0.5) * std::tgamma(b + 0.5) * std::tgamma(c + 0.5) * std::tgamma(d + 0.5) /
         std::tgamma(a + b + c + d + 2.0);
}

TEST(Quadrature, EvenMonomialsMatchBetaIntegrals) {
  const QuadratureGrid grid(GridSize{});
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; c <= 2; ++c)
        for (int d = 0; d <= 2; ++d) {
          const auto r = integrate<1>(grid, [&](const S3Point& p) {
            return std::array<double, 1>{std::pow(p[0], 2 * a) * std::pow(p[1], 2 * b) * std::pow(p[2], 2 * c) *
                                         std::pow(p[3], 2 * d)};
          });
          EXPECT_NEAR(r[0], sphere_moment(a, b, c, d), 1e-13) << a << b << c << d;
        }
}

TEST(Quadrature, RejectsTinyGrids) {
  EXPECT_THROW(s3_quadrature(1, 8, 8), DomainError);
  EXPECT_THROW(s3_quadrature(8, 8, 1), DomainError);
  EXPECT_NO_THROW(s3_quadrature(2, 2, 2));
}

TEST(Quadrature, NodesAvoidPoles) {
  const QuadratureGrid grid(GridSize{8, 8, 8});
  for (const auto& p : grid.points()) {
    EXPECT_GT(p.chi(), 0.0);
    EXPECT_LT(p.chi(), pi);
    EXPECT_GT(p.theta(), 0.0);
    EXPECT_LT(p.theta(), pi);
  }
}

TEST(Quadrature, ResultIndependentOfWorkerCount) {
  const QuadratureGrid grid(GridSize{32, 16, 32});
  auto f = [](const S3Point& p) { return std::array<double, 2>{std::exp(p[0] * p[3]), std::sin(3 * p[1]) + p[2]}; };
  const auto one = integrate<2>(grid, f, 1);
  const auto three = integrate<2>(grid, f, 3);
  EXPECT_EQ(one, three);
}

TEST(Quadrature, PairwiseSum) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v.data(), v.size()), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum(v.data(), 0), 0.0);
}

}  // namespace
}  // namespace emknot
