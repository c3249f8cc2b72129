#pragma once

#include <Eigen/Dense>
#include <vector>

#include "emknot/geometry.hpp"
#include "emknot/half_integer.hpp"
#include "emknot/quadrature.hpp"

namespace emknot {

struct SpinIndex {
  HalfInteger j;
  HalfInteger m;
  HalfInteger n;
};

/// True when m, n lie in {-j, ..., j}.
bool valid_spin_index(const SpinIndex& idx);

/// Labels -j, -j+1, ..., j.
std::vector<HalfInteger> spin_labels(HalfInteger j);

/// Left-right harmonic Y_{j;m,n}, orthonormal on the unit S^3.
/// Throws DomainError for an invalid index.
cplx harmonic(const SpinIndex& idx, const S3Point& p);
inline cplx harmonic(HalfInteger j, HalfInteger m, HalfInteger n, const S3Point& p) { return harmonic({j, m, n}, p); }

/// All (2j+1)^2 harmonics of spin j at one point, m-major with n ascending.
class HarmonicTable {
 public:
  HarmonicTable(HalfInteger j, const S3Point& p);

  HalfInteger j() const { return j_; }
  int dim() const { return dim_; }
  /// Zero for labels outside [-j, j], which is how edge terms drop out.
  cplx operator()(HalfInteger m, HalfInteger n) const;
  cplx at_index(int k) const { return values_[k]; }
  const std::vector<cplx>& values() const { return values_; }
  static int index(HalfInteger j, HalfInteger m, HalfInteger n);

 private:
  HalfInteger j_;
  int dim_;
  std::vector<cplx> values_;
};

inline HarmonicTable harmonic_table(HalfInteger j, const S3Point& p) { return HarmonicTable(j, p); }

/// Radial factor of the adjoint harmonic, i^(2j+l) (-1)^(2j) N sin^l(chi) C^(l+1)_(2j-l)(cos chi),
/// normalized so that the integral of |R|^2 sin^2(chi) over (0, pi) is 1.
cplx adjoint_radial(HalfInteger j, int l, double chi);

/// Adjoint harmonic R_{j,l}(chi) Y_{l,M}(theta, phi). Requires 0 <= l <= 2j, |M| <= l.
cplx adjoint_harmonic(HalfInteger j, int l, int M, const S3Point& p);

/// Gegenbauer polynomial C^(lambda)_n(x) by three-term recurrence.
double gegenbauer(int n, double lambda, double x);

/// Complex spherical harmonic Y_{l,M} with the Condon-Shortley phase.
cplx spherical_harmonic(int l, int M, double theta, double phi);

/// <j1 m1; j2 m2 | J M>, Condon-Shortley convention, Racah formula.
/// Returns 0 when the projections do not add up or a triangle rule fails.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J, HalfInteger M);

/// G[(m,n),(m',n')] = integral of Y_{j;m,n} conj(Y_{j;m',n'}).
Eigen::MatrixXcd gram_matrix(HalfInteger j, const QuadratureGrid& grid, int workers = 0);

}  // namespace emknot
