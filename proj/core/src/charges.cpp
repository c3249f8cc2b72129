#include "emknot/charges.hpp"

#include <cmath>
#include <limits>

#include "emknot/errors.hpp"
#include "emknot/reference.hpp"

namespace emknot {

namespace {

struct NameInfo {
  const char* name;
  int ell_power;
};

constexpr NameInfo kNames[] = {
    {"E", 0},      {"P1", 0},     {"P2", 0},   {"P3", 0},     {"K1", 1},     {"K2", 1},   {"K3", 1},
    {"L1", 1},     {"L2", 1},     {"L3", 1},   {"D", 1},      {"V0", 2},     {"V1", 2},   {"V2", 2},
    {"V3", 2},     {"Pr", 0},     {"Ptheta", 1}, {"Pphi", 1}, {"Lr", 1},     {"Ltheta", 2}, {"Lphi", 2},
    {"Vr", 2},     {"Vtheta", 3}, {"Vphi", 3},
};

constexpr std::size_t kCount = std::size(kNames);

ChargeSet from_vector(const double* v) {
  ChargeSet c;
  c.E = v[0];
  c.P = {v[1], v[2], v[3]};
  c.K = {v[4], v[5], v[6]};
  c.L = {v[7], v[8], v[9]};
  c.D = v[10];
  c.V0 = v[11];
  c.V = {v[12], v[13], v[14]};
  c.P_sph = {v[15], v[16], v[17]};
  c.L_sph = {v[18], v[19], v[20]};
  c.V_sph = {v[21], v[22], v[23]};
  return c;
}

// (r, theta, phi) integrands of a sphere-frame vector density with prefactor fac.
template <class Vec>
auto spherical_integrands(const Vec& d, const S3Point& p, double ell, double fac) {
  using T = typename Vec::Scalar;
  const double sc = std::sin(p.chi()), cc = std::cos(p.chi());
  const double st = std::sin(p.theta()), ct = std::cos(p.theta());
  const double sp = std::sin(p.phi()), cp = std::cos(p.phi());
  const T radial = st * cp * d[0] + st * sp * d[1] + ct * d[2];
  const T polar = ct * cp * d[0] + ct * sp * d[1] - st * d[2];
  const T azim = sp * d[0] - cp * d[1];
  std::array<T, 3> out;
  out[0] = -fac * (1.0 - cc) * radial / ell;
  out[1] = fac * (sc * cc * polar + sc * sc * azim);
  out[2] = fac * (sc * sc * st * polar - sc * cc * st * azim);
  return out;
}

}  // namespace

const std::vector<std::string>& ChargeSet::names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> out;
    for (const auto& k : kNames) out.emplace_back(k.name);
    return out;
  }();
  return n;
}

std::vector<double> ChargeSet::as_vector() const {
  return {E,        P[0],     P[1],     P[2],     K[0],     K[1],     K[2],     L[0],
          L[1],     L[2],     D,        V0,       V[0],     V[1],     V[2],     P_sph[0],
          P_sph[1], P_sph[2], L_sph[0], L_sph[1], L_sph[2], V_sph[0], V_sph[1], V_sph[2]};
}

double ChargeSet::get(std::string_view name) const {
  const std::vector<double> v = as_vector();
  for (std::size_t k = 0; k < kCount; ++k)
    if (name == kNames[k].name) return v[k];
  throw DomainError("unknown charge name '" + std::string(name) + "'");
}

int ell_power(std::string_view name) {
  for (const auto& k : kNames)
    if (name == k.name) return k.ell_power;
  throw DomainError("unknown charge name '" + std::string(name) + "'");
}

DensitySample density_sample(const Vector3cd& z, double omega, const S3Point& p) {
  const SphereFrameField f = sphere_frame_fields(z, omega, 0.0);
  const Eigen::Vector3d w(p[0], p[1], p[2]);
  DensitySample s;
  s.rho = 0.5 * (f.E.squaredNorm() + f.B.squaredNorm());
  s.P = f.E.cross(f.B);
  s.L = s.P.cross(w);
  s.V = 2.0 * w * s.P.dot(w) - w.squaredNorm() * s.P;
  s.K = s.rho * w;
  return s;
}

DensitySample density_sample(const ModeCoefficients& lambda, const S3Point& p) {
  return density_sample(z_field(lambda, p), lambda.omega(), p);
}

ChargeSet compute_charges(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  const XCoefficients x = x_coefficients(lambda);
  const double ell = lambda.ell();
  const double omega = lambda.omega();
  const std::vector<double> v = integrate_n(
      grid, kCount,
      [&](const S3Point& p, double* out) {
        const HarmonicTable t(lambda.j(), p);
        const DensitySample s = density_sample(z_field(x, t), omega, p);
        const double g = 1.0 - p[3];
        const Eigen::Matrix3d e = tetrad_t0(p, ell);
        const double fl = ell / g;
        const Eigen::Vector3d Pi = e.transpose() * s.P;
        const Eigen::Vector3d Li = fl * (e.transpose() * s.L);
        const Eigen::Vector3d Vi = fl * fl * (e.transpose() * s.V);
        out[0] = g * s.rho / ell;
        for (int i = 0; i < 3; ++i) {
          out[1 + i] = Pi[i];
          out[4 + i] = s.K[i];
          out[7 + i] = Li[i];
          out[12 + i] = Vi[i];
        }
        out[10] = s.P.dot(Eigen::Vector3d(p[0], p[1], p[2]));
        out[11] = fl * (1.0 - p[3] * p[3]) * s.rho;
        const auto ps = spherical_integrands(s.P, p, ell, 1.0);
        const auto ls = spherical_integrands(s.L, p, ell, fl);
        const auto vs = spherical_integrands(s.V, p, ell, fl * fl);
        for (int i = 0; i < 3; ++i) {
          out[15 + i] = ps[i];
          out[18 + i] = ls[i];
          out[21 + i] = vs[i];
        }
      },
      workers);
  return from_vector(v.data());
}

double energy(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).E;
}

double energy_closed(const ModeCoefficients& lambda) {
  const double j = lambda.j().value();
  return 8.0 * std::pow(j + 1.0, 3) * (2.0 * j + 1.0) * lambda.norm_squared() / lambda.ell();
}

Eigen::Vector3d momentum(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).P;
}

Eigen::Vector3d boost(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).K;
}

double dilatation(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).D;
}

Eigen::Vector3d angular_momentum(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).L;
}

double sct_scalar(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).V0;
}

Eigen::Vector3d sct_vector(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers) {
  return compute_charges(lambda, grid, workers).V;
}

Eigen::Vector3d spherical_components(const ModeCoefficients& lambda, const QuadratureGrid& grid, VectorDensity d,
                                     int workers) {
  const ChargeSet c = compute_charges(lambda, grid, workers);
  switch (d) {
    case VectorDensity::P: return c.P_sph;
    case VectorDensity::L: return c.L_sph;
    case VectorDensity::V: return c.V_sph;
  }
  return Eigen::Vector3d::Zero();
}

Vector3cd vector_charge_sesquilinear(VectorDensity d, const ModeCoefficients& l1, const ModeCoefficients& l2,
                                     const QuadratureGrid& grid, int workers) {
  if (l1.j() != l2.j() || l1.ell() != l2.ell()) {
    throw DomainError("sesquilinear charge needs coefficient sets with equal j and ell");
  }
  const XCoefficients x1 = x_coefficients(l1);
  const XCoefficients x2 = x_coefficients(l2);
  const double ell = l1.ell();
  const double om2 = l1.omega() * l1.omega();
  const std::vector<double> v = integrate_n(
      grid, 6,
      [&](const S3Point& p, double* out) {
        const HarmonicTable t(l1.j(), p);
        const Vector3cd z1 = z_field(x1, t);
        const Vector3cd z2 = z_field(x2, t);
        const Vector3cd P = cplx(0.0, 2.0 * om2) * z1.conjugate().cross(z2);
        const Vector3cd w(p[0], p[1], p[2]);
        const double g = 1.0 - p[3];
        const double fl = ell / g;
        Vector3cd dens;
        switch (d) {
          case VectorDensity::P: dens = P; break;
          case VectorDensity::L: dens = fl * P.cross(w); break;
          case VectorDensity::V: dens = fl * fl * (2.0 * w * (P.transpose() * w)(0) - w.squaredNorm() * P); break;
        }
        const Eigen::Matrix3cd e = tetrad_t0(p, ell).cast<cplx>();
        const Vector3cd vi = e.transpose() * dens;
        for (int i = 0; i < 3; ++i) {
          out[2 * i] = vi[i].real();
          out[2 * i + 1] = vi[i].imag();
        }
      },
      workers);
  return {cplx(v[0], v[1]), cplx(v[2], v[3]), cplx(v[4], v[5])};
}

std::vector<ReferenceValue> reference_charges(const ModeCoefficients& lambda) {
  std::vector<ReferenceValue> out = reference::general(lambda);
  auto append = [&](const std::vector<ReferenceValue>& more) { out.insert(out.end(), more.begin(), more.end()); };
  const int j2 = lambda.j().twice();
  if (j2 == 0) append(reference::spin0(lambda));
  if (j2 == 1 || j2 == 2) append(reference::spin_half_and_one(lambda));
  if (j2 == 1) append(reference::spin_half_spherical(lambda));
  return out;
}

ChargeReport charge_report(const ModeCoefficients& lambda, GridSize grid, const ReportOptions& options) {
  ChargeReport r;
  r.grid = grid;
  r.options = options;
  r.charges = compute_charges(lambda, QuadratureGrid(grid), options.workers);
  if (options.convergence_check) r.refined = compute_charges(lambda, QuadratureGrid(grid.doubled()), options.workers);

  std::vector<ReferenceValue> refs = reference_charges(lambda);
  refs.insert(refs.end(), options.extra_references.begin(), options.extra_references.end());
  const std::vector<double> values = r.charges.as_vector();
  const std::vector<double> fine = r.refined ? r.refined->as_vector() : values;
  const double ell = lambda.ell();
  const auto& names = ChargeSet::names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    ReportEntry e;
    e.name = names[k];
    e.value = values[k];
    e.scale = r.charges.E * std::pow(ell, ell_power(e.name));
    auto normalized = [&](double dev, double den) {
      if (dev == 0.0) return 0.0;
      if (den > 0.0) return dev / den;
      return std::numeric_limits<double>::infinity();
    };
    for (const auto& ref : refs) {
      if (ref.name == e.name) e.reference = ref.value;
    }
    if (e.reference) {
      e.abs_deviation = std::abs(e.value - *e.reference);
      const double den = std::abs(*e.reference) > 1e-8 * e.scale ? std::abs(*e.reference) : e.scale;
      e.rel_deviation = normalized(e.abs_deviation, den);
      r.max_reference_deviation = std::max(r.max_reference_deviation, e.rel_deviation);
    }
    if (r.refined) {
      e.doubling_change = normalized(std::abs(fine[k] - values[k]), e.scale);
      r.max_doubling_change = std::max(r.max_doubling_change, e.doubling_change);
    }
    r.entries.push_back(e);
  }
  r.references_ok = r.max_reference_deviation <= options.reference_tol;
  r.converged = r.max_doubling_change <= options.convergence_tol;
  return r;
}

}  // namespace emknot
