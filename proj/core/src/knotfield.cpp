#include "emknot/knotfield.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "emknot/errors.hpp"

namespace emknot {

using std::numbers::pi;

ModeCoefficients::ModeCoefficients(HalfInteger j, double ell) : j_(j), ell_(ell) {
  if (j.twice() < 0) throw DomainError("spin must be non-negative");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("length scale must be positive");
  omega_ = 2.0 * (j.value() + 1.0);
  values_ = Eigen::VectorXcd::Zero(size());
}

bool ModeCoefficients::contains(HalfInteger m, HalfInteger n) const {
  const int j2 = j_.twice();
  return m.twice() >= -j2 && m.twice() <= j2 && (j2 - m.twice()) % 2 == 0 && n.twice() >= -j2 - 2 &&
         n.twice() <= j2 + 2 && (j2 - n.twice()) % 2 == 0;
}

int ModeCoefficients::index(HalfInteger m, HalfInteger n) const {
  if (!contains(m, n)) {
    throw DomainError("mode (m=" + m.to_string() + ", n=" + n.to_string() + ") outside spin " + j_.to_string());
  }
  return integer_difference(m, -j_) * n_count() + integer_difference(n, -j_ - HalfInteger::from_int(1));
}

std::pair<HalfInteger, HalfInteger> ModeCoefficients::label(int k) const {
  const int im = k / n_count();
  const int in = k % n_count();
  return {HalfInteger::from_twice(-j_.twice() + 2 * im), HalfInteger::from_twice(-j_.twice() - 2 + 2 * in)};
}

ModeCoefficients ModeCoefficients::with_values(const Eigen::VectorXcd& v) const {
  if (v.size() != size()) throw DomainError("coefficient vector has wrong size");
  ModeCoefficients out = *this;
  out.values_ = v;
  return out;
}

ModeCoefficients random_coefficients(HalfInteger j, double ell, std::mt19937_64& rng) {
  ModeCoefficients out(j, ell);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int k = 0; k < out.size(); ++k) {
    const double re = nd(rng);
    const double im = nd(rng);
    out.values()[k] = {re, im};
  }
  return out;
}

namespace {

struct BasisCoefficient {
  double coef;
  int dn_twice;  // shift of n in twice units
};

BasisCoefficient basis_coefficient(HalfInteger j, HalfInteger n, BasisComponent c) {
  const double jv = j.value();
  const double nv = n.value();
  switch (c) {
    case BasisComponent::Plus: return {std::sqrt(std::max(0.0, (jv - nv) * (jv - nv + 1.0) / 2.0)), 2};
    case BasisComponent::Three: return {std::sqrt(std::max(0.0, (jv + 1.0) * (jv + 1.0) - nv * nv)), 0};
    case BasisComponent::Minus: return {-std::sqrt(std::max(0.0, (jv + nv) * (jv + nv + 1.0) / 2.0)), -2};
  }
  return {0.0, 0};
}

void check_mode(HalfInteger j, HalfInteger m, HalfInteger n) {
  const ModeCoefficients probe(j, 1.0);
  if (!probe.contains(m, n)) {
    throw DomainError("mode (m=" + m.to_string() + ", n=" + n.to_string() + ") outside spin " + j.to_string());
  }
}

}  // namespace

cplx basis_function(const HarmonicTable& t, HalfInteger m, HalfInteger n, BasisComponent c) {
  check_mode(t.j(), m, n);
  const BasisCoefficient bc = basis_coefficient(t.j(), n, c);
  if (bc.coef == 0.0) return 0.0;
  return bc.coef * t(m, n + HalfInteger::from_twice(bc.dn_twice));
}

cplx basis_function(HalfInteger j, HalfInteger m, HalfInteger n, BasisComponent c, const S3Point& p) {
  check_mode(j, m, n);
  const BasisCoefficient bc = basis_coefficient(j, n, c);
  const HalfInteger nn = n + HalfInteger::from_twice(bc.dn_twice);
  if (bc.coef == 0.0 || !valid_spin_index({j, m, nn})) return 0.0;
  return bc.coef * harmonic(j, m, nn, p);
}

Eigen::MatrixXcd x_matrix(HalfInteger j) {
  const ModeCoefficients shape(j, 1.0);
  const int dim = j.twice() + 1;
  const int ny = dim * dim;
  Eigen::MatrixXcd plus = Eigen::MatrixXcd::Zero(ny, shape.size());
  Eigen::MatrixXcd three = plus;
  Eigen::MatrixXcd minus = plus;
  const BasisComponent comps[3] = {BasisComponent::Plus, BasisComponent::Three, BasisComponent::Minus};
  Eigen::MatrixXcd* targets[3] = {&plus, &three, &minus};
  for (int k = 0; k < shape.size(); ++k) {
    const auto [m, n] = shape.label(k);
    for (int c = 0; c < 3; ++c) {
      const BasisCoefficient bc = basis_coefficient(j, n, comps[c]);
      const HalfInteger nn = n + HalfInteger::from_twice(bc.dn_twice);
      if (bc.coef == 0.0 || !valid_spin_index({j, m, nn})) continue;
      (*targets[c])(HarmonicTable::index(j, m, nn), k) += bc.coef;
    }
  }
  const double s = std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd X(3 * ny, shape.size());
  X.middleRows(0, ny) = (plus + minus) / s;
  X.middleRows(ny, ny) = (plus - minus) / (I * s);
  X.middleRows(2 * ny, ny) = three;
  return X;
}

XCoefficients x_coefficients(const ModeCoefficients& lambda) {
  const Eigen::MatrixXcd X = x_matrix(lambda.j());
  const Eigen::VectorXcd v = X * lambda.values();
  const int ny = static_cast<int>(v.size() / 3);
  XCoefficients out{lambda.j(), {}};
  for (int a = 0; a < 3; ++a) out.x[a].assign(v.data() + a * ny, v.data() + (a + 1) * ny);
  return out;
}

Vector3cd z_field(const XCoefficients& x, const HarmonicTable& t) {
  Vector3cd z = Vector3cd::Zero();
  const auto& y = t.values();
  for (int a = 0; a < 3; ++a) {
    const auto& xa = x.x[a];
    cplx s = 0.0;
    for (std::size_t k = 0; k < xa.size(); ++k) s += xa[k] * y[k];
    z[a] = s;
  }
  return z;
}

Vector3cd z_field(const ModeCoefficients& lambda, const S3Point& p) {
  const HarmonicTable t(lambda.j(), p);
  cplx zp = 0.0, z3 = 0.0, zm = 0.0;
  for (int k = 0; k < lambda.size(); ++k) {
    const cplx c = lambda.values()[k];
    if (c == 0.0) continue;
    const auto [m, n] = lambda.label(k);
    zp += c * basis_function(t, m, n, BasisComponent::Plus);
    z3 += c * basis_function(t, m, n, BasisComponent::Three);
    zm += c * basis_function(t, m, n, BasisComponent::Minus);
  }
  const double s = std::sqrt(2.0);
  const cplx I(0.0, 1.0);
  return {(zp + zm) / s, (zp - zm) / (I * s), z3};
}

SphereFrameField sphere_frame_fields(const Vector3cd& z, double omega, double tau) {
  const Vector3cd zt = z * std::polar(1.0, omega * tau);
  SphereFrameField f;
  f.Z = z;
  f.E = 2.0 * omega * zt.imag();
  f.B = -2.0 * omega * zt.real();
  return f;
}

SphereFrameField sphere_frame_fields(const ModeCoefficients& lambda, double tau, const S3Point& p) {
  return sphere_frame_fields(z_field(lambda, p), lambda.omega(), tau);
}

namespace {

MinkowskiField pullback(const SphereFrameField& sf, const Eigen::Matrix4d& forms, const MinkowskiEvent& e) {
  Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
  const Eigen::Vector4d et = forms.row(0).transpose();
  for (int a = 0; a < 3; ++a) {
    const Eigen::Vector4d ea = forms.row(1 + a).transpose();
    F += sf.E[a] * (ea * et.transpose() - et * ea.transpose());
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const double eps = levi_civita(a, b, c);
        if (eps == 0.0) continue;
        F += sf.B[a] * eps * forms.row(1 + b).transpose() * forms.row(1 + c);
      }
    }
  }
  MinkowskiField out;
  out.event = e;
  out.E = {F(1, 0), F(2, 0), F(3, 0)};
  out.B = {F(2, 3), F(3, 1), F(1, 2)};
  return out;
}

}  // namespace

MinkowskiField minkowski_fields(const ModeCoefficients& lambda, const XCoefficients& x, const MinkowskiEvent& e) {
  const double ell = lambda.ell();
  const CylinderPoint c = minkowski_to_cylinder(e, ell);
  if (!(std::cos(c.tau) - std::cos(c.chi) > 0.0)) throw DomainError("event maps outside the cylinder wedge");
  const S3Point p = s3_point(e, ell);
  const HarmonicTable t(lambda.j(), p);
  const SphereFrameField sf = sphere_frame_fields(z_field(x, t), lambda.omega(), c.tau);
  return pullback(sf, one_forms_minkowski(e, ell), e);
}

MinkowskiField minkowski_fields(const ModeCoefficients& lambda, const MinkowskiEvent& e) {
  return minkowski_fields(lambda, x_coefficients(lambda), e);
}

MinkowskiField minkowski_fields_t0(const ModeCoefficients& lambda, const MinkowskiEvent& e) {
  if (e.t != 0.0) throw DomainError("tetrad evaluation requires t = 0");
  const double ell = lambda.ell();
  const S3Point p = s3_point(e, ell);
  const double g = 1.0 - p[3];
  const Eigen::Matrix3d tet = tetrad_t0(p, ell);
  const SphereFrameField sf = sphere_frame_fields(lambda, 0.0, p);
  MinkowskiField out;
  out.event = e;
  out.E = (g / ell) * tet.transpose() * sf.E;
  out.B.setZero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const double eijk = levi_civita(i, j, k);
        if (eijk == 0.0) continue;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
              const double eabc = levi_civita(a, b, c);
              if (eabc != 0.0) out.B[i] += 0.5 * eijk * eabc * sf.B[a] * tet(b, j) * tet(c, k);
            }
      }
  return out;
}

Eigen::Vector4d gauge_potential(const ModeCoefficients& lambda, const MinkowskiEvent& e) {
  const double ell = lambda.ell();
  const CylinderPoint c = minkowski_to_cylinder(e, ell);
  const S3Point p = s3_point(e, ell);
  const Vector3cd z = z_field(lambda, p) * std::polar(1.0, lambda.omega() * c.tau);
  const Eigen::Vector3d A = 2.0 * z.real();
  const Eigen::Matrix4d f = one_forms_minkowski(e, ell);
  return f.bottomRows(3).transpose() * A;
}

MaxwellResidual maxwell_residual(const ModeCoefficients& lambda, const XCoefficients& x, const MinkowskiEvent& e,
                                 double h) {
  const double ell = lambda.ell();
  const double d = h * ell;
  auto at = [&](int axis, double shift) {
    MinkowskiEvent s = e;
    switch (axis) {
      case 0: s.t += shift; break;
      case 1: s.x += shift; break;
      case 2: s.y += shift; break;
      default: s.z += shift; break;
    }
    return minkowski_fields(lambda, x, s);
  };
  std::array<Eigen::Vector3d, 4> dE, dB;
  for (int axis = 0; axis < 4; ++axis) {
    const MinkowskiField p = at(axis, d);
    const MinkowskiField m = at(axis, -d);
    dE[axis] = (p.E - m.E) / (2.0 * d);
    dB[axis] = (p.B - m.B) / (2.0 * d);
  }
  auto curl = [](const std::array<Eigen::Vector3d, 4>& g) {
    return Eigen::Vector3d(g[2][2] - g[3][1], g[3][0] - g[1][2], g[1][1] - g[2][0]);
  };
  const MinkowskiField f = minkowski_fields(lambda, x, e);
  const double scale = std::sqrt(f.E.squaredNorm() + f.B.squaredNorm()) / ell;
  MaxwellResidual r;
  r.div_E = std::abs(dE[1][0] + dE[2][1] + dE[3][2]) / scale;
  r.div_B = std::abs(dB[1][0] + dB[2][1] + dB[3][2]) / scale;
  r.faraday = (curl(dE) + dB[0]).norm() / scale;
  r.ampere = (curl(dB) - dE[0]).norm() / scale;
  return r;
}

double gauge_identity_residual(const ModeCoefficients& lambda, const MinkowskiEvent& e) {
  const double ell = lambda.ell();
  const Eigen::Vector4d A = gauge_potential(lambda, e);
  const Eigen::Vector3d x = e.position();
  const double w = x.squaredNorm() + e.t * e.t + ell * ell;
  return std::abs(w * A[0] + 2.0 * e.t * x.dot(A.tail<3>())) / (w * A.norm());
}

Vector3cd rs_vector(const ModeCoefficients& lambda, const MinkowskiEvent& e) { return minkowski_fields(lambda, e).S(); }

ModeCoefficients hopfian_tt_coefficients(double c) {
  if (!(c < 1.0)) throw DomainError("time-translated preset needs c < 1");
  const double ell = 1.0 - c;
  ModeCoefficients out(HalfInteger::from_int(0), ell);
  out.set(HalfInteger::from_int(0), HalfInteger::from_int(-1), cplx(0.0, -pi / (2.0 * ell * ell)));
  return out;
}

ModeCoefficients hopfian_rotated_coefficients(double theta) {
  ModeCoefficients out(HalfInteger::from_int(0), 1.0);
  const HalfInteger z = HalfInteger::from_int(0);
  out.set(z, HalfInteger::from_int(1), cplx(0.0, pi / 4.0 * (std::cosh(theta) - 1.0)));
  out.set(z, z, cplx(-pi / (2.0 * std::sqrt(2.0)) * std::sinh(theta), 0.0));
  out.set(z, HalfInteger::from_int(-1), cplx(0.0, -pi / 4.0 * (std::cosh(theta) + 1.0)));
  return out;
}

}  // namespace emknot
