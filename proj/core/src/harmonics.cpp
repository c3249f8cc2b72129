#include "emknot/harmonics.hpp"

#include <cmath>
#include <numbers>

#include "emknot/errors.hpp"

namespace emknot {

using std::numbers::pi;

namespace {

double log_fact(int n) { return std::lgamma(n + 1.0); }

cplx ipow(cplx z, int p) {
  cplx r = 1.0;
  for (int k = 0; k < p; ++k) r *= z;
  return r;
}

// i^k for integer k
cplx ipow_i(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_index(const SpinIndex& idx) {
  if (!valid_spin_index(idx)) {
    throw DomainError("invalid spin index (j=" + idx.j.to_string() + ", m=" + idx.m.to_string() +
                      ", n=" + idx.n.to_string() + ")");
  }
}

}  // namespace

bool valid_spin_index(const SpinIndex& idx) {
  const int j2 = idx.j.twice();
  if (j2 < 0) return false;
  auto ok = [&](HalfInteger q) {
    return q.twice() >= -j2 && q.twice() <= j2 && (j2 - q.twice()) % 2 == 0;
  };
  return ok(idx.m) && ok(idx.n);
}

std::vector<HalfInteger> spin_labels(HalfInteger j) {
  std::vector<HalfInteger> out;
  for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(HalfInteger::from_twice(t));
  return out;
}

cplx harmonic(const SpinIndex& idx, const S3Point& p) {
  check_index(idx);
  const int jpm = integer_difference(idx.j, -idx.m);
  const int jmm = integer_difference(idx.j, idx.m);
  const int jpn = integer_difference(idx.j, -idx.n);
  const int jmn = integer_difference(idx.j, idx.n);
  const int mpn = (idx.m.twice() + idx.n.twice()) / 2;
  const double pre = 0.5 * (log_fact(jpm) + log_fact(jmm) + log_fact(jpn) + log_fact(jmn));
  const cplx a = p.alpha();
  const cplx b = p.beta();
  const int kmin = std::max(0, -mpn);
  const int kmax = std::min(jmm, jmn);
  cplx sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const int p1 = mpn + k;
    const int p3 = jmm - k;
    const int p4 = jmn - k;
    const double mag = std::exp(pre - log_fact(p1) - log_fact(p3) - log_fact(p4) - log_fact(k));
    const double sign = ((mpn + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * mag * ipow(a, p1) * ipow(std::conj(a), k) * ipow(b, p3) * ipow(std::conj(b), p4);
  }
  return std::sqrt((idx.j.twice() + 1.0) / (2.0 * pi * pi)) * sum;
}

HarmonicTable::HarmonicTable(HalfInteger j, const S3Point& p) : j_(j), dim_(j.twice() + 1) {
  if (j.twice() < 0) throw DomainError("negative spin");
  const int j2 = j.twice();
  const cplx a = p.alpha();
  const cplx b = p.beta();
  std::vector<cplx> pa(j2 + 1), pac(j2 + 1), pb(j2 + 1), pbc(j2 + 1);
  pa[0] = pac[0] = pb[0] = pbc[0] = 1.0;
  for (int k = 1; k <= j2; ++k) {
    pa[k] = pa[k - 1] * a;
    pac[k] = pac[k - 1] * std::conj(a);
    pb[k] = pb[k - 1] * b;
    pbc[k] = pbc[k - 1] * std::conj(b);
  }
  std::vector<double> lf(j2 + 1);
  for (int k = 0; k <= j2; ++k) lf[k] = log_fact(k);
  const double norm = std::sqrt((j2 + 1.0) / (2.0 * pi * pi));

  values_.resize(static_cast<std::size_t>(dim_) * dim_);
  for (int im = 0; im < dim_; ++im) {
    const int jpm = im;
    const int jmm = j2 - im;
    for (int in = 0; in < dim_; ++in) {
      const int jpn = in;
      const int jmn = j2 - in;
      const int mpn = im + in - j2;
      const double pre = 0.5 * (lf[jpm] + lf[jmm] + lf[jpn] + lf[jmn]);
      const int kmin = std::max(0, -mpn);
      const int kmax = std::min(jmm, jmn);
      cplx sum = 0.0;
      for (int k = kmin; k <= kmax; ++k) {
        const int p1 = mpn + k;
        const int p3 = jmm - k;
        const int p4 = jmn - k;
        const double mag = std::exp(pre - lf[p1] - lf[p3] - lf[p4] - lf[k]);
        const double sign = (((mpn + k) % 2) + 2) % 2 == 0 ? 1.0 : -1.0;
        sum += sign * mag * pa[p1] * pac[k] * pb[p3] * pbc[p4];
      }
      values_[im * dim_ + in] = norm * sum;
    }
  }
}

int HarmonicTable::index(HalfInteger j, HalfInteger m, HalfInteger n) {
  const int dim = j.twice() + 1;
  return integer_difference(m, -j) * dim + integer_difference(n, -j);
}

cplx HarmonicTable::operator()(HalfInteger m, HalfInteger n) const {
  const int j2 = j_.twice();
  if (m.twice() < -j2 || m.twice() > j2 || n.twice() < -j2 || n.twice() > j2) return 0.0;
  return values_[index(j_, m, n)];
}

double gegenbauer(int n, double lambda, double x) {
  if (n < 0) return 0.0;
  double c0 = 1.0;
  if (n == 0) return c0;
  double c1 = 2.0 * lambda * x;
  for (int k = 2; k <= n; ++k) {
    const double c2 = (2.0 * x * (k + lambda - 1.0) * c1 - (k + 2.0 * lambda - 2.0) * c0) / k;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

cplx adjoint_radial(HalfInteger j, int l, double chi) {
  const int n = j.twice() - l;
  if (l < 0 || n < 0) throw DomainError("adjoint harmonic needs 0 <= l <= 2j");
  const double lam = l + 1.0;
  const double log_h = std::log(pi) + (1.0 - 2.0 * lam) * std::log(2.0) + std::lgamma(n + 2.0 * lam) -
                       log_fact(n) - std::log(n + lam) - 2.0 * std::lgamma(lam);
  const double norm = std::exp(-0.5 * log_h);
  const double radial = norm * std::pow(std::sin(chi), l) * gegenbauer(n, lam, std::cos(chi));
  const double sign = (j.twice() % 2 == 0) ? 1.0 : -1.0;
  return sign * ipow_i(j.twice() + l) * radial;
}

cplx spherical_harmonic(int l, int M, double theta, double phi) {
  if (l < 0 || std::abs(M) > l) throw DomainError("spherical harmonic index out of range");
  const int am = std::abs(M);
  const cplx y = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(am), theta) *
                 std::polar(1.0, am * phi);
  if (M >= 0) return y;
  return ((am % 2 == 0) ? 1.0 : -1.0) * std::conj(y);
}

cplx adjoint_harmonic(HalfInteger j, int l, int M, const S3Point& p) {
  if (l < 0 || l > j.twice() || std::abs(M) > l) {
    throw DomainError("adjoint harmonic index out of range (l=" + std::to_string(l) + ", M=" + std::to_string(M) +
                      ")");
  }
  return adjoint_radial(j, l, p.chi()) * spherical_harmonic(l, M, p.theta(), p.phi());
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J, HalfInteger M) {
  if (m1 + m2 != M) return 0.0;
  if (!valid_spin_index({j1, m1, m1}) || !valid_spin_index({j2, m2, m2}) || !valid_spin_index({J, M, M})) return 0.0;
  const int a = integer_difference(j1 + j2, J);
  const int b = integer_difference(j1 + J, j2);
  const int c = integer_difference(j2 + J, j1);
  if (a < 0 || b < 0 || c < 0) return 0.0;
  if ((j1 + j2 + J).twice() % 2 != 0) return 0.0;
  const int s = integer_difference(j1 + j2 + J, -HalfInteger::from_int(1));  // j1+j2+J+1

  const int j1mm1 = integer_difference(j1, m1), j1pm1 = integer_difference(j1, -m1);
  const int j2mm2 = integer_difference(j2, m2), j2pm2 = integer_difference(j2, -m2);
  const int JmM = integer_difference(J, M), JpM = integer_difference(J, -M);

  const double log_pre = 0.5 * (std::log(J.twice() + 1.0) + log_fact(a) + log_fact(b) + log_fact(c) - log_fact(s) +
                                log_fact(JpM) + log_fact(JmM) + log_fact(j1mm1) + log_fact(j1pm1) +
                                log_fact(j2mm2) + log_fact(j2pm2));

  const int d4 = integer_difference(J - j2, -m1);  // J - j2 + m1
  const int d5 = integer_difference(J - j1, m2);   // J - j1 - m2
  const int kmin = std::max({0, -d4, -d5});
  const int kmax = std::min({a, j1mm1, j2pm2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double t =
        std::exp(log_pre - log_fact(k) - log_fact(a - k) - log_fact(j1mm1 - k) - log_fact(j2pm2 - k) -
                 log_fact(d4 + k) - log_fact(d5 + k));
    sum += (k % 2 == 0) ? t : -t;
  }
  return sum;
}

Eigen::MatrixXcd gram_matrix(HalfInteger j, const QuadratureGrid& grid, int workers) {
  const int dim = j.twice() + 1;
  const int n = dim * dim;
  const std::vector<double> v = integrate_n(
      grid, 2 * static_cast<std::size_t>(n) * n,
      [&](const S3Point& p, double* out) {
        const HarmonicTable t(j, p);
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < n; ++c) {
            const cplx z = t.at_index(r) * std::conj(t.at_index(c));
            out[2 * (r * n + c)] = z.real();
            out[2 * (r * n + c) + 1] = z.imag();
          }
        }
      },
      workers);
  Eigen::MatrixXcd G(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) G(r, c) = {v[2 * (r * n + c)], v[2 * (r * n + c) + 1]};
  return G;
}

}  // namespace emknot
