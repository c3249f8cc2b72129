#include "emknot/geometry.hpp"

#include <numbers>

#include "emknot/errors.hpp"

namespace emknot {

using std::numbers::pi;

double MinkowskiEvent::theta() const {
  const double rho = std::hypot(x, y);
  return std::atan2(rho, z);
}

double MinkowskiEvent::phi() const {
  double p = std::atan2(y, x);
  if (p < 0.0) p += 2.0 * pi;
  return p;
}

S3Point S3Point::embed_angles(double chi, double theta, double phi) {
  S3Point p;
  const double sc = std::sin(chi);
  const double st = std::sin(theta);
  p.w_ = {sc * st * std::cos(phi), sc * st * std::sin(phi), sc * std::cos(theta), std::cos(chi)};
  p.alpha_ = {p.w_[0], p.w_[1]};
  p.beta_ = {p.w_[2], p.w_[3]};
  p.chi_ = chi;
  p.theta_ = theta;
  p.phi_ = phi;
  return p;
}

S3Point S3Point::from_vector(const Eigen::Vector4d& w) {
  const double norm = w.norm();
  if (!(std::abs(norm - 1.0) <= 1e-10)) {
    throw DomainError("S3Point: vector is not unit (|w| = " + std::to_string(norm) + ")");
  }
  S3Point p;
  p.w_ = w;
  p.alpha_ = {w[0], w[1]};
  p.beta_ = {w[2], w[3]};
  const double rho = std::hypot(w[0], w[1]);
  p.chi_ = std::atan2(std::hypot(rho, w[2]), w[3]);
  p.theta_ = std::atan2(rho, w[2]);
  double ph = std::atan2(w[1], w[0]);
  if (ph < 0.0) ph += 2.0 * pi;
  p.phi_ = ph;
  return p;
}

S3Point embed(double chi, double theta, double phi) { return S3Point::from_angles(chi, theta, phi); }

CylinderPoint minkowski_to_cylinder(const MinkowskiEvent& e, double ell) {
  const double r = e.r();
  const double U = std::atan((e.t - r) / ell);
  const double V = std::atan((e.t + r) / ell);
  return {V + U, pi + U - V, e.theta(), e.phi()};
}

MinkowskiEvent cylinder_to_minkowski(const CylinderPoint& p, double ell) {
  const double g = std::cos(p.tau) - std::cos(p.chi);
  if (!(g > 0.0)) throw DomainError("cylinder point outside the Minkowski wedge (gamma <= 0)");
  const double t = ell * std::sin(p.tau) / g;
  const double r = ell * std::sin(p.chi) / g;
  const double st = std::sin(p.theta);
  return {t, r * st * std::cos(p.phi), r * st * std::sin(p.phi), r * std::cos(p.theta)};
}

double gamma(const MinkowskiEvent& e, double ell) {
  const double r2 = e.x * e.x + e.y * e.y + e.z * e.z;
  const double s = r2 - e.t * e.t + ell * ell;
  return 2.0 * ell * ell / std::sqrt(4.0 * e.t * e.t * ell * ell + s * s);
}

S3Point s3_point(const MinkowskiEvent& e, double ell) {
  const double g = gamma(e, ell);
  const CylinderPoint c = minkowski_to_cylinder(e, ell);
  const double k = g / ell;
  Eigen::Vector4d w(k * e.x, k * e.y, k * e.z, std::cos(c.chi));
  w /= w.norm();
  return S3Point::from_vector(w);
}

Eigen::Matrix4d jacobian(const MinkowskiEvent& e, double ell) {
  const CylinderPoint c = minkowski_to_cylinder(e, ell);
  const double p = 1.0 - std::cos(c.tau) * std::cos(c.chi);
  const double q = std::sin(c.tau) * std::sin(c.chi);
  Eigen::Matrix4d J = Eigen::Matrix4d::Identity();
  J(0, 0) = p / ell;
  J(0, 1) = -q / ell;
  J(1, 0) = q / ell;
  J(1, 1) = -p / ell;
  return J;
}

double levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0.0;
  return ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
}

Eigen::Matrix4d one_forms_minkowski(const MinkowskiEvent& e, double ell) {
  const Eigen::Vector3d x = e.position();
  const double t = e.t;
  const double r2 = x.squaredNorm();
  const double g = gamma(e, ell);
  const double k = g * g / (ell * ell * ell);

  Eigen::Matrix4d f = Eigen::Matrix4d::Zero();
  f(0, 0) = 0.5 * k * (t * t + r2 + ell * ell);
  for (int i = 0; i < 3; ++i) f(0, 1 + i) = -k * t * x[i];
  const double diag = -0.5 * (t * t - r2 + ell * ell);
  for (int a = 0; a < 3; ++a) {
    f(1 + a, 0) = k * x[a] * t;
    for (int i = 0; i < 3; ++i) {
      double v = (a == i ? diag : 0.0) - x[a] * x[i];
      for (int j = 0; j < 3; ++j) v -= ell * levi_civita(a, j, i) * x[j];
      f(1 + a, 1 + i) = k * v;
    }
  }
  return f;
}

Eigen::Matrix3d tetrad_t0(const S3Point& p, double ell) {
  const Eigen::Vector4d& w = p.omega();
  const double g = 1.0 - w[3];
  Eigen::Matrix3d e;
  for (int a = 0; a < 3; ++a) {
    for (int i = 0; i < 3; ++i) {
      double v = (a == i ? g * w[3] : 0.0) - w[a] * w[i];
      for (int c = 0; c < 3; ++c) v += levi_civita(a, i, c) * g * w[c];
      e(a, i) = v / ell;
    }
  }
  return e;
}

namespace {

HooftSymbols build_hooft() {
  HooftSymbols h;
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) m(b, c) = levi_civita(a, b, c);
    Eigen::Matrix4d sd = m;
    sd(a, 3) = 1.0;
    sd(3, a) = -1.0;
    Eigen::Matrix4d asd = m;
    asd(a, 3) = -1.0;
    asd(3, a) = 1.0;
    h.eta[a] = sd;
    h.eta_bar[a] = asd;
  }
  const cplx I(0.0, 1.0);
  Eigen::Matrix2cd s1, s2, s3;
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, -I, I, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  h.generators = {-I * s1, -I * s2, -I * s3};
  return h;
}

}  // namespace

const HooftSymbols& hooft_symbols() {
  static const HooftSymbols h = build_hooft();
  return h;
}

Eigen::Matrix4d generator_matrix(FieldKind kind, int a) {
  if (a < 0 || a > 2) throw DomainError("generator index out of range");
  const HooftSymbols& h = hooft_symbols();
  switch (kind) {
    case FieldKind::L: return h.eta[a];
    case FieldKind::R: return h.eta_bar[a];
    case FieldKind::D: return h.eta[a] + h.eta_bar[a];
  }
  return Eigen::Matrix4d::Zero();
}

Eigen::Vector4d invariant_vector_field(FieldKind kind, int a, const S3Point& p) {
  return generator_matrix(kind, a) * p.omega();
}

Eigen::Matrix4d flow(FieldKind kind, int a, double h) {
  const HooftSymbols& hs = hooft_symbols();
  if (a < 0 || a > 2) throw DomainError("generator index out of range");
  const Eigen::Matrix4d I = Eigen::Matrix4d::Identity();
  const double c = std::cos(h);
  const double s = std::sin(h);
  switch (kind) {
    case FieldKind::L: return c * I + s * hs.eta[a];
    case FieldKind::R: return c * I + s * hs.eta_bar[a];
    case FieldKind::D: return (c * I + s * hs.eta[a]) * (c * I + s * hs.eta_bar[a]);
  }
  return I;
}

}  // namespace emknot
