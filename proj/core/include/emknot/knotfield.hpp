#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <random>
#include <utility>
#include <vector>

#include "emknot/geometry.hpp"
#include "emknot/half_integer.hpp"
#include "emknot/harmonics.hpp"

namespace emknot {

/// Spin j, length scale ell and the complex mode amplitudes Lambda_{m,n}
/// with m in [-j, j], n in [-j-1, j+1], stored m-major with n ascending.
class ModeCoefficients {
 public:
  /// Throws DomainError for j < 0 or ell <= 0.
  ModeCoefficients(HalfInteger j, double ell);

  HalfInteger j() const { return j_; }
  double ell() const { return ell_; }
  /// Cylinder frequency 2(j+1) of the type-I solutions.
  double omega() const { return omega_; }

  int m_count() const { return j_.twice() + 1; }
  int n_count() const { return j_.twice() + 3; }
  int size() const { return m_count() * n_count(); }

  bool contains(HalfInteger m, HalfInteger n) const;
  /// Throws DomainError for labels outside the range.
  int index(HalfInteger m, HalfInteger n) const;
  std::pair<HalfInteger, HalfInteger> label(int k) const;

  cplx operator()(HalfInteger m, HalfInteger n) const { return values_[index(m, n)]; }
  void set(HalfInteger m, HalfInteger n, cplx v) { values_[index(m, n)] = v; }

  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }
  ModeCoefficients with_values(const Eigen::VectorXcd& v) const;

  /// Sum of |Lambda|^2.
  double norm_squared() const { return values_.squaredNorm(); }
  bool is_zero() const { return values_.isZero(0.0); }

 private:
  HalfInteger j_;
  double ell_;
  double omega_;
  Eigen::VectorXcd values_;
};

/// Gaussian complex amplitudes, unit variance per real component.
ModeCoefficients random_coefficients(HalfInteger j, double ell, std::mt19937_64& rng);

enum class BasisComponent { Plus, Three, Minus };

/// One component of the knot-basis solution Z^{j;m,n} in the (+, 3, -) basis.
cplx basis_function(HalfInteger j, HalfInteger m, HalfInteger n, BasisComponent c, const S3Point& p);

/// Same, reading harmonics from a precomputed table.
cplx basis_function(const HarmonicTable& t, HalfInteger m, HalfInteger n, BasisComponent c);

/// Z_a = sum over harmonics of x[a][k] Y_k, with k the HarmonicTable index.
struct XCoefficients {
  HalfInteger j;
  std::array<std::vector<cplx>, 3> x;
};

/// Linear map Lambda -> X as a (3 (2j+1)^2) x ((2j+1)(2j+3)) matrix,
/// row blocks a = 1, 2, 3.
Eigen::MatrixXcd x_matrix(HalfInteger j);

XCoefficients x_coefficients(const ModeCoefficients& lambda);

Vector3cd z_field(const XCoefficients& x, const HarmonicTable& t);
Vector3cd z_field(const ModeCoefficients& lambda, const S3Point& p);

/// Cylinder-frame fields at conformal time tau: E_a = -d_tau A_a, B_a = -Omega A_a,
/// with A_a = Z_a e^{i Omega tau} + c.c.
struct SphereFrameField {
  Vector3cd Z;
  Eigen::Vector3d E;
  Eigen::Vector3d B;
};

SphereFrameField sphere_frame_fields(const ModeCoefficients& lambda, double tau, const S3Point& p);
SphereFrameField sphere_frame_fields(const Vector3cd& z, double omega, double tau);

struct MinkowskiField {
  MinkowskiEvent event;
  Eigen::Vector3d E;
  Eigen::Vector3d B;

  Vector3cd S() const { return E.cast<cplx>() + cplx(0.0, 1.0) * B.cast<cplx>(); }
};

/// Field strength pulled back from the cylinder through the Minkowski coframe.
MinkowskiField minkowski_fields(const ModeCoefficients& lambda, const MinkowskiEvent& e);

/// Same evaluator with a precomputed X expansion, for repeated evaluation.
MinkowskiField minkowski_fields(const ModeCoefficients& lambda, const XCoefficients& x, const MinkowskiEvent& e);

/// t = 0 evaluation through the spatial tetrad only. Throws DomainError for t != 0.
MinkowskiField minkowski_fields_t0(const ModeCoefficients& lambda, const MinkowskiEvent& e);

/// Minkowski gauge potential A_mu = A_a e^a_mu, components (t, x, y, z).
Eigen::Vector4d gauge_potential(const ModeCoefficients& lambda, const MinkowskiEvent& e);

/// Riemann-Silberstein vector E + iB.
Vector3cd rs_vector(const ModeCoefficients& lambda, const MinkowskiEvent& e);

/// Central-difference residuals of the vacuum equations at an event, each
/// divided by |S| / ell at that event.
struct MaxwellResidual {
  double div_E = 0.0;
  double div_B = 0.0;
  double faraday = 0.0;  ///< |curl E + d_t B|
  double ampere = 0.0;   ///< |curl B - d_t E|
  double max() const { return std::max({div_E, div_B, faraday, ampere}); }
};

/// Step h is in units of ell.
MaxwellResidual maxwell_residual(const ModeCoefficients& lambda, const XCoefficients& x, const MinkowskiEvent& e,
                                 double h = 1e-4);

/// |(r^2 + t^2 + ell^2) A_t + 2 r t A_r| / ((r^2 + t^2 + ell^2) |A|).
double gauge_identity_residual(const ModeCoefficients& lambda, const MinkowskiEvent& e);

/// j = 0, ell = 1 - c, Lambda_{0,-1} = -i pi / (2 ell^2). Requires c < 1.
ModeCoefficients hopfian_tt_coefficients(double c);

/// j = 0, ell = 1, Lambda_{0,1} = i pi/4 (cosh - 1), Lambda_{0,0} = -pi/(2 sqrt 2) sinh,
/// Lambda_{0,-1} = -i pi/4 (cosh + 1).
ModeCoefficients hopfian_rotated_coefficients(double theta);

}  // namespace emknot
