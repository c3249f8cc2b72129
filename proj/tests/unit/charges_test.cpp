#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "emknot/charges.hpp"
#include "emknot/errors.hpp"
#include "emknot/reference.hpp"
#include "support.hpp"

namespace emknot {
namespace {

using std::numbers::pi;
using test::h;
using test::single_mode;

const cplx I(0.0, 1.0);

const QuadratureGrid& grid() {
  static const QuadratureGrid g(GridSize{});
  return g;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(Energy, Examples) {
  EXPECT_NEAR(energy(single_mode(h(0), h(0), h(0), 1.0), grid()), 8.0, 1e-12);
  EXPECT_DOUBLE_EQ(energy_closed(single_mode(h(0), h(0), h(0), 1.0)), 8.0);
  EXPECT_NEAR(energy(single_mode(h(2), h(2), h(4), 2.0), grid()), 96.0, 1e-11);
  EXPECT_DOUBLE_EQ(energy_closed(single_mode(h(2), h(2), h(4), 2.0)), 96.0);
  for (double c : {-1.0, 0.0, 0.5}) {
    const double expected = 2 * pi * pi / std::pow(1 - c, 5);
    EXPECT_LT(rel(energy(hopfian_tt_coefficients(c), grid()), expected), 1e-12) << c;
  }
  for (double t : {0.0, 0.5, 1.0})
    EXPECT_LT(rel(energy(hopfian_rotated_coefficients(t), grid()), 2 * pi * pi * std::pow(std::cosh(t), 2)), 1e-12);
}

TEST(Energy, RandomCoefficientsMatchClosedForm) {
  std::mt19937_64 rng(60);
  for (int j2 = 0; j2 <= 3; ++j2)
    for (int k = 0; k < 5; ++k) {
      const ModeCoefficients l = random_coefficients(h(j2), 0.5 + 0.3 * k, rng);
      EXPECT_LT(rel(energy(l, grid()), energy_closed(l)), 1e-10);
    }
}

TEST(Energy, PositiveAndQuadratic) {
  std::mt19937_64 rng(61);
  const ModeCoefficients l = random_coefficients(h(1), 1.0, rng);
  const double e = energy(l, grid());
  EXPECT_GT(e, 0.0);
  EXPECT_LT(rel(energy(l.with_values(cplx(0.0, 3.0) * l.values()), grid()), 9.0 * e), 1e-12);
}

TEST(Charges, ZeroCoefficientsGiveZero) {
  const ChargeSet c = compute_charges(ModeCoefficients(h(2), 1.0), grid());
  for (double v : c.as_vector()) EXPECT_EQ(v, 0.0);
  const ChargeReport r = charge_report(ModeCoefficients(h(0), 1.0), GridSize{16, 8, 16});
  for (const auto& e : r.entries) EXPECT_EQ(e.value, 0.0);
}

TEST(Charges, NamesAndPowers) {
  const ChargeSet c;
  EXPECT_EQ(ChargeSet::names().size(), c.as_vector().size());
  EXPECT_EQ(ChargeSet::names().front(), "E");
  EXPECT_THROW(c.get("Q7"), DomainError);
  EXPECT_THROW(ell_power("Q7"), DomainError);
  EXPECT_EQ(ell_power("E"), 0);
  EXPECT_EQ(ell_power("P2"), 0);
  EXPECT_EQ(ell_power("L3"), 1);
  EXPECT_EQ(ell_power("V0"), 2);
}

TEST(Charges, SeparateEntryPointsAgreeWithSinglePass) {
  std::mt19937_64 rng(62);
  const ModeCoefficients l = random_coefficients(h(1), 1.1, rng);
  const ChargeSet c = compute_charges(l, grid());
  EXPECT_NEAR(energy(l, grid()), c.E, 1e-12 * c.E);
  EXPECT_LT((momentum(l, grid()) - c.P).norm(), 1e-12 * c.E);
  EXPECT_LT((angular_momentum(l, grid()) - c.L).norm(), 1e-12 * c.E);
  EXPECT_LT((sct_vector(l, grid()) - c.V).norm(), 1e-12 * c.E);
  EXPECT_NEAR(sct_scalar(l, grid()), c.V0, 1e-12 * c.V0);
  EXPECT_LT((spherical_components(l, grid(), VectorDensity::P) - c.P_sph).norm(), 1e-12 * c.E);
}

TEST(Charges, VanishingCharges) {
  std::mt19937_64 rng(63);
  for (int j2 = 0; j2 <= 2; ++j2)
    for (int k = 0; k < 3; ++k) {
      const double ell = 0.6 + 0.5 * k;
      const ModeCoefficients l = random_coefficients(h(j2), ell, rng);
      const ChargeSet c = compute_charges(l, grid());
      EXPECT_LT(c.K.norm(), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(boost(l, grid()).norm() - c.K.norm()), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(c.D), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(dilatation(l, grid())), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(c.P_sph[0]), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(c.P_sph[1]), 1e-10 * c.E * ell);
      EXPECT_LT(std::abs(c.L_sph[0]), 1e-10 * c.E * ell * ell);
      EXPECT_LT(std::abs(c.V_sph[0]), 1e-10 * c.E * ell * ell * ell);
    }
}

TEST(Charges, SpecialConformalFollowsEnergyAndMomentum) {
  std::mt19937_64 rng(64);
  for (int j2 = 0; j2 <= 2; ++j2) {
    const double ell = 1.3;
    const ModeCoefficients l = random_coefficients(h(j2), ell, rng);
    const ChargeSet c = compute_charges(l, grid());
    EXPECT_LT(rel(c.V0, ell * ell * c.E), 1e-9);
    EXPECT_LT((c.V - ell * ell * c.P).norm(), 1e-9 * ell * ell * c.P.norm());
  }
  EXPECT_NEAR(sct_scalar(single_mode(h(0), h(0), h(0), 1.0), grid()), 8.0, 1e-11);
}

TEST(Charges, SpinZeroProportionalities) {
  std::mt19937_64 rng(65);
  for (double ell : {0.7, 1.0, 1.9}) {
    const ModeCoefficients l = random_coefficients(h(0), ell, rng);
    const ChargeSet c = compute_charges(l, grid());
    const double P3 = c.P[2], l2 = ell * ell, s = c.E;
    EXPECT_LT((c.L + ell * c.P).norm(), 1e-9 * ell * c.P.norm());
    EXPECT_NEAR(c.P_sph[2], ell * P3, 1e-9 * s * ell);
    EXPECT_NEAR(c.L_sph[1], 4.0 / 3.0 * l2 * P3, 1e-9 * s * l2);
    EXPECT_NEAR(c.L_sph[2], -1.0 / 3.0 * l2 * P3, 1e-9 * s * l2);
    EXPECT_NEAR(c.V_sph[1], -4.0 / 3.0 * l2 * ell * P3, 1e-9 * s * l2 * ell);
    EXPECT_NEAR(c.V_sph[2], -5.0 / 3.0 * l2 * ell * P3, 1e-9 * s * l2 * ell);
  }
}

TEST(Charges, LengthScaling) {
  std::mt19937_64 rng(66);
  const ModeCoefficients a = random_coefficients(h(1), 1.0, rng);
  ModeCoefficients b(h(1), 2.5);
  b.values() = a.values();
  const ChargeSet ca = compute_charges(a, grid()), cb = compute_charges(b, grid());
  EXPECT_LT(rel(cb.E, ca.E / 2.5), 1e-12);
  EXPECT_LT((cb.P - ca.P / 2.5).norm(), 1e-12 * ca.E);
  EXPECT_LT((cb.L - ca.L).norm(), 1e-12 * ca.E);
  EXPECT_LT(rel(cb.V0, ca.V0 * 2.5), 1e-12);
  EXPECT_LT((cb.V - ca.V * 2.5).norm(), 1e-12 * ca.E * 2.5);
}

TEST(Charges, SpinZeroMomentumFromSingleModes) {
  const ChargeSet a = compute_charges(single_mode(h(0), h(0), h(-2), 1.0), grid());
  EXPECT_LT((a.P - Eigen::Vector3d(0, 0, 4)).norm(), 1e-12);
  const ChargeSet b = compute_charges(single_mode(h(0), h(0), h(2), 1.0), grid());
  EXPECT_LT((b.P - Eigen::Vector3d(0, 0, -4)).norm(), 1e-12);
  ModeCoefficients l(h(0), 1.0);
  l.set(h(0), h(0), 1.0);
  l.set(h(0), h(2), 1.0);
  EXPECT_NEAR(compute_charges(l, grid()).P[0], -4 * std::sqrt(2.0), 1e-12);
}

// Direct R^3 integral of the Hopfian built from the Bateman pair (independent of the S^3 machinery).
std::array<double, 4> bateman_hopfian_charges() {
  const GaussLegendre gu = gauss_legendre(200), gt = gauss_legendre(40);
  const int nphi = 80;
  std::array<double, 4> out{};
  for (int iu = 0; iu < 200; ++iu) {
    const double u = (gu.nodes[iu] + 1) * pi / 4, wu = gu.weights[iu] * pi / 4;
    const double r = std::tan(u), jr = r * r / std::pow(std::cos(u), 2);
    for (int it = 0; it < 40; ++it) {
      const double ct = gt.nodes[it], st = std::sqrt(1 - ct * ct);
      for (int ip = 0; ip < nphi; ++ip) {
        const double ph = 2 * pi * ip / nphi, w = wu * jr * gt.weights[it] * 2 * pi / nphi;
        const Vector3cd x(r * st * std::cos(ph), r * st * std::sin(ph), r * ct);
        const cplx A = 0.5 * (r * r + 1.0);
        const Vector3cd ga = ((x + Vector3cd(0, 0, I)) * A - (A - 1.0 + I * x[2]) * x) / (A * A);
        const Vector3cd gb = (Vector3cd(1.0, -I, 0) * A - (x[0] - I * x[1]) * x) / (A * A);
        const Vector3cd s = -ga.cross(gb);
        const Eigen::Vector3d e = s.real(), b = s.imag();
        out[0] += w * 0.5 * (e.squaredNorm() + b.squaredNorm());
        const Eigen::Vector3d p = e.cross(b);
        for (int k = 0; k < 3; ++k) out[k + 1] += w * p[k];
      }
    }
  }
  return out;
}

TEST(Charges, HopfianMatchesDirectSpaceIntegral) {
  const auto ref = bateman_hopfian_charges();
  const ChargeSet c = compute_charges(hopfian_tt_coefficients(0.0), grid());
  const Eigen::Vector3d p(ref[1], ref[2], ref[3]);
  EXPECT_LT(rel(c.E, ref[0]), 1e-5);
  EXPECT_LT((c.P - p).norm() / p.norm(), 1e-5);
  EXPECT_NEAR(c.P.norm() / c.E, 0.5, 1e-10);
}

TEST(Charges, ClosedFormVectorChargesAreHalfTheIntegrals) {
  std::mt19937_64 rng(67);
  for (int j2 = 0; j2 <= 2; ++j2) {
    const ModeCoefficients l = random_coefficients(h(j2), 1.0, rng);
    const ChargeSet c = compute_charges(l, grid());
    for (const auto& ref : reference_charges(l)) {
      if (!reference::is_tabulated_vector(ref.name) || std::abs(ref.value) < 1e-8 * c.E) continue;
      EXPECT_NEAR(c.get(ref.name) / ref.value, 2.0, 1e-9) << ref.name << " j2=" << j2;
    }
  }
  EXPECT_NEAR(compute_charges(single_mode(h(2), h(-2), h(-4), 1.0), grid()).P[2], 48.0, 1e-10);
  EXPECT_NEAR(compute_charges(single_mode(h(2), h(-2), h(-4), 1.0), grid()).L[2], -144.0, 1e-10);
  EXPECT_NEAR(compute_charges(single_mode(h(1), h(1), h(-3), 1.0), grid()).P[2], 36.0, 1e-10);
}

TEST(Charges, ReferenceCoverage) {
  std::mt19937_64 rng(68);
  auto names = [](const std::vector<ReferenceValue>& v) {
    std::vector<std::string> n;
    for (const auto& r : v) n.push_back(r.name);
    return n;
  };
  const auto n0 = names(reference_charges(random_coefficients(h(0), 1.0, rng)));
  EXPECT_NE(std::find(n0.begin(), n0.end(), "Vphi"), n0.end());
  const auto n1 = names(reference_charges(random_coefficients(h(1), 1.0, rng)));
  EXPECT_NE(std::find(n1.begin(), n1.end(), "Ltheta"), n1.end());
  const auto n2 = names(reference_charges(random_coefficients(h(2), 1.0, rng)));
  EXPECT_NE(std::find(n2.begin(), n2.end(), "L3"), n2.end());
  EXPECT_EQ(std::find(n2.begin(), n2.end(), "Ltheta"), n2.end());
  const auto n3 = names(reference_charges(random_coefficients(h(3), 1.0, rng)));
  EXPECT_EQ(std::find(n3.begin(), n3.end(), "P3"), n3.end());
  EXPECT_NE(std::find(n3.begin(), n3.end(), "E"), n3.end());
}

TEST(Sesquilinear, DiagonalAndHermitian) {
  std::mt19937_64 rng(69);
  for (VectorDensity d : {VectorDensity::P, VectorDensity::L, VectorDensity::V}) {
    const ModeCoefficients a = random_coefficients(h(1), 1.2, rng);
    const ModeCoefficients b = random_coefficients(h(1), 1.2, rng);
    const ChargeSet c = compute_charges(a, grid());
    const Eigen::Vector3d q = d == VectorDensity::P ? c.P : (d == VectorDensity::L ? c.L : c.V);
    const Vector3cd aa = vector_charge_sesquilinear(d, a, a, grid());
    EXPECT_LT((aa.real() - q).norm(), 1e-12 * c.E * 2);
    EXPECT_LT(aa.imag().norm(), 1e-12 * c.E * 2);
    const Vector3cd s = vector_charge_sesquilinear(d, a, b, grid()) + vector_charge_sesquilinear(d, b, a, grid());
    EXPECT_LT(s.imag().norm(), 1e-12 * s.norm());
  }
}

TEST(Sesquilinear, AdditiveInEachSlot) {
  std::mt19937_64 rng(70);
  const ModeCoefficients a = random_coefficients(h(2), 1.0, rng);
  const ModeCoefficients b = random_coefficients(h(2), 1.0, rng);
  const ModeCoefficients c = random_coefficients(h(2), 1.0, rng);
  const ModeCoefficients bc = b.with_values(b.values() + c.values());
  const Vector3cd lhs = momentum_sesquilinear(a, bc, grid());
  const Vector3cd rhs = momentum_sesquilinear(a, b, grid()) + momentum_sesquilinear(a, c, grid());
  EXPECT_LT((lhs - rhs).norm(), 1e-12 * lhs.norm());
  const Vector3cd lhs2 = momentum_sesquilinear(bc, a, grid());
  const Vector3cd rhs2 = momentum_sesquilinear(b, a, grid()) + momentum_sesquilinear(c, a, grid());
  EXPECT_LT((lhs2 - rhs2).norm(), 1e-12 * lhs2.norm());
  EXPECT_THROW(momentum_sesquilinear(a, ModeCoefficients(h(2), 2.0), grid()), DomainError);
}

TEST(Report, ConvergenceStamp) {
  std::mt19937_64 rng(71);
  const ModeCoefficients l = random_coefficients(h(1), 1.0, rng);
  const ChargeReport r = charge_report(l, GridSize{});
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.max_doubling_change, 1e-10);
  ASSERT_TRUE(r.refined.has_value());
  EXPECT_EQ(r.entries.size(), ChargeSet::names().size());

  const ChargeReport coarse = charge_report(random_coefficients(h(3), 1.0, rng), GridSize{8, 8, 8});
  EXPECT_FALSE(coarse.converged);
}

TEST(Report, ExtraReferencesReplaceBuiltIns) {
  std::mt19937_64 rng(72);
  const ModeCoefficients l = random_coefficients(h(3), 1.0, rng);
  ReportOptions opt;
  opt.convergence_check = false;
  opt.extra_references = {{"E", 1.0}, {"P1", 0.0}};
  const ChargeReport r = charge_report(l, GridSize{}, opt);
  for (const auto& e : r.entries) {
    if (e.name == "E") {
      ASSERT_TRUE(e.reference.has_value());
      EXPECT_EQ(*e.reference, 1.0);
    }
    if (e.name == "P1") EXPECT_TRUE(e.reference.has_value());
  }
  EXPECT_FALSE(r.references_ok);
  EXPECT_FALSE(r.refined.has_value());
}

TEST(Report, RelativeDeviationFallsBackToScale) {
  std::mt19937_64 rng(73);
  const ChargeReport r = charge_report(random_coefficients(h(3), 1.0, rng), GridSize{});
  for (const auto& e : r.entries) {
    if (e.name == "K1") {
      ASSERT_TRUE(e.reference.has_value());
      EXPECT_NEAR(e.rel_deviation, e.abs_deviation / e.scale, 1e-300);
    }
  }
  EXPECT_TRUE(r.references_ok);
}

}  // namespace
}  // namespace emknot
