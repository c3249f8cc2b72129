#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>

namespace emknot {

using cplx = std::complex<double>;
using Vector3cd = Eigen::Matrix<cplx, 3, 1>;

/// A Minkowski event (t, x, y, z) in length units with c = 1.
struct MinkowskiEvent {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static MinkowskiEvent from(double t, const Eigen::Vector3d& x) { return {t, x[0], x[1], x[2]}; }

  Eigen::Vector3d position() const { return {x, y, z}; }
  double r() const { return std::sqrt(x * x + y * y + z * z); }
  double theta() const;
  double phi() const;  ///< in [0, 2pi)
};

/// A point (tau, chi, theta, phi) on the cylinder R x S^3.
struct CylinderPoint {
  double tau = 0.0;
  double chi = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Unit four-vector on S^3 with cached hyperspherical angles and the
/// SU(2) pair alpha = w1 + i w2, beta = w3 + i w4.
class S3Point {
 public:
  S3Point() : w_(0.0, 0.0, 0.0, 1.0), alpha_(0.0, 0.0), beta_(0.0, 1.0) {}

  /// Throws DomainError unless |w| = 1 within 1e-10.
  static S3Point from_vector(const Eigen::Vector4d& w);
  static S3Point from_angles(double chi, double theta, double phi) { return embed_angles(chi, theta, phi); }

  const Eigen::Vector4d& omega() const { return w_; }
  double operator[](int i) const { return w_[i]; }
  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }
  double chi() const { return chi_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  static S3Point embed_angles(double chi, double theta, double phi);

  Eigen::Vector4d w_;
  cplx alpha_;
  cplx beta_;
  double chi_ = 0.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

S3Point embed(double chi, double theta, double phi);

CylinderPoint minkowski_to_cylinder(const MinkowskiEvent& e, double ell);

/// Throws DomainError when gamma = cos(tau) - cos(chi) <= 0.
MinkowskiEvent cylinder_to_minkowski(const CylinderPoint& p, double ell);

/// Conformal factor 2 l^2 / sqrt(4 t^2 l^2 + (r^2 - t^2 + l^2)^2).
double gamma(const MinkowskiEvent& e, double ell);

/// S^3 point of the image of `e` on the cylinder.
S3Point s3_point(const MinkowskiEvent& e, double ell);

/// d(tau, chi, theta, phi) / d(t, r, theta, phi).
Eigen::Matrix4d jacobian(const MinkowskiEvent& e, double ell);

/// Coframe coefficients in Cartesian Minkowski coordinates. Row 0 is e^tau,
/// rows 1..3 are e^1..e^3; columns are (t, x, y, z).
Eigen::Matrix4d one_forms_minkowski(const MinkowskiEvent& e, double ell);

/// Spatial coframe e^a_i at t = 0, written on S^3 (gamma = 1 - w4).
Eigen::Matrix3d tetrad_t0(const S3Point& p, double ell);

double levi_civita(int a, int b, int c);

/// 't Hooft symbols eta^a_{BC} (self-dual) and the anti-self-dual partner,
/// plus the su(2) generators T_a = -i sigma_a.
struct HooftSymbols {
  std::array<Eigen::Matrix4d, 3> eta;
  std::array<Eigen::Matrix4d, 3> eta_bar;
  std::array<Eigen::Matrix2cd, 3> generators;
};

const HooftSymbols& hooft_symbols();

/// L: left-invariant fields (eta), R: right-invariant fields (eta_bar),
/// D: their sum, generating the SO(3) stability subgroup.
enum class FieldKind { L, R, D };

/// 4x4 generator M with v = M w the tangent vector of the field at w.
/// Component index a is 0-based.
Eigen::Matrix4d generator_matrix(FieldKind kind, int a);

Eigen::Vector4d invariant_vector_field(FieldKind kind, int a, const S3Point& p);

/// exp(h M) for the generator of (kind, a); exact since eta^2 = -1.
Eigen::Matrix4d flow(FieldKind kind, int a, double h);

/// Central difference of f along the exact rotation flow of (kind, a).
template <class F>
auto apply_invariant_derivative(FieldKind kind, int a, F&& f, const S3Point& p, double h = 1e-5) {
  const Eigen::Vector4d wp = flow(kind, a, h) * p.omega();
  const Eigen::Vector4d wm = flow(kind, a, -h) * p.omega();
  return (f(S3Point::from_vector(wp)) - f(S3Point::from_vector(wm))) / (2.0 * h);
}

/// Second derivative along the flow, used for Casimir checks.
template <class F>
auto apply_invariant_derivative2(FieldKind kind, int a, F&& f, const S3Point& p, double h = 1e-3) {
  const Eigen::Vector4d wp = flow(kind, a, h) * p.omega();
  const Eigen::Vector4d wm = flow(kind, a, -h) * p.omega();
  return (f(S3Point::from_vector(wp)) - 2.0 * f(p) + f(S3Point::from_vector(wm))) / (h * h);
}

}  // namespace emknot
