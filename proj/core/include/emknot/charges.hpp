#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emknot/knotfield.hpp"
#include "emknot/quadrature.hpp"

namespace emknot {

/// The 15 conformal charges at t = 0 plus spherical components of P, L, V.
struct ChargeSet {
  double E = 0.0;
  Eigen::Vector3d P = Eigen::Vector3d::Zero();
  Eigen::Vector3d K = Eigen::Vector3d::Zero();
  Eigen::Vector3d L = Eigen::Vector3d::Zero();
  double D = 0.0;
  double V0 = 0.0;
  Eigen::Vector3d V = Eigen::Vector3d::Zero();
  Eigen::Vector3d P_sph = Eigen::Vector3d::Zero();  ///< (r, theta, phi)
  Eigen::Vector3d L_sph = Eigen::Vector3d::Zero();
  Eigen::Vector3d V_sph = Eigen::Vector3d::Zero();

  /// E, P1..P3, K1..K3, L1..L3, D, V0, V1..V3, Pr, Ptheta, Pphi, Lr, Ltheta, Lphi, Vr, Vtheta, Vphi.
  static const std::vector<std::string>& names();
  /// Throws DomainError for an unknown name.
  double get(std::string_view name) const;
  std::vector<double> as_vector() const;
};

/// Power of ell carried by a charge relative to the energy, used to build
/// dimensionally consistent scales (E ell^k).
int ell_power(std::string_view name);

/// Charge densities on S^3 at tau = 0.
struct DensitySample {
  double rho = 0.0;
  Eigen::Vector3d P = Eigen::Vector3d::Zero();  ///< E x B in the sphere frame
  Eigen::Vector3d L = Eigen::Vector3d::Zero();  ///< P x w
  Eigen::Vector3d V = Eigen::Vector3d::Zero();  ///< 2 w (P.w) - |w|^2 P
  Eigen::Vector3d K = Eigen::Vector3d::Zero();  ///< rho w
};

DensitySample density_sample(const Vector3cd& z, double omega, const S3Point& p);
DensitySample density_sample(const ModeCoefficients& lambda, const S3Point& p);

/// All charges from a single pass over the grid.
ChargeSet compute_charges(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);

double energy(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
double energy_closed(const ModeCoefficients& lambda);
Eigen::Vector3d momentum(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
Eigen::Vector3d boost(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
double dilatation(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
Eigen::Vector3d angular_momentum(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
double sct_scalar(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);
Eigen::Vector3d sct_vector(const ModeCoefficients& lambda, const QuadratureGrid& grid, int workers = 0);

enum class VectorDensity { P, L, V };

/// (r, theta, phi) components of the chosen vector density.
Eigen::Vector3d spherical_components(const ModeCoefficients& lambda, const QuadratureGrid& grid, VectorDensity d,
                                     int workers = 0);

/// Sesquilinear form B(l1, l2) of a vector charge; B(l, l) is the charge itself.
/// Both coefficient sets must share j and ell.
Vector3cd vector_charge_sesquilinear(VectorDensity d, const ModeCoefficients& l1, const ModeCoefficients& l2,
                                     const QuadratureGrid& grid, int workers = 0);

inline Vector3cd momentum_sesquilinear(const ModeCoefficients& l1, const ModeCoefficients& l2,
                                       const QuadratureGrid& grid, int workers = 0) {
  return vector_charge_sesquilinear(VectorDensity::P, l1, l2, grid, workers);
}

struct ReferenceValue {
  std::string name;  ///< a ChargeSet name
  double value;
};

/// Closed-form values of every charge that has one for this spin.
/// Quantities without a closed form are absent.
std::vector<ReferenceValue> reference_charges(const ModeCoefficients& lambda);

struct ReportEntry {
  std::string name;
  double value = 0.0;
  std::optional<double> reference;
  double abs_deviation = 0.0;  ///< |value - reference|, 0 without reference
  double rel_deviation = 0.0;  ///< see charge_report
  double scale = 0.0;          ///< E ell^k
  double doubling_change = 0.0;  ///< |value(2N) - value(N)| / scale
};

struct ReportOptions {
  bool convergence_check = true;
  /// Further references (e.g. preset tables); they replace same-named entries.
  std::vector<ReferenceValue> extra_references;
  double convergence_tol = 1e-10;
  double reference_tol = 1e-8;
  int workers = 0;
};

struct ChargeReport {
  ChargeSet charges;
  std::optional<ChargeSet> refined;
  GridSize grid;
  std::vector<ReportEntry> entries;
  double max_reference_deviation = 0.0;
  double max_doubling_change = 0.0;
  bool references_ok = true;
  bool converged = true;
  ReportOptions options;
};

/// Numeric charges, references where available and a grid-doubling stamp.
/// Relative deviation divides by |reference| when that exceeds 1e-8 scale,
/// otherwise by the scale itself.
ChargeReport charge_report(const ModeCoefficients& lambda, GridSize grid, const ReportOptions& options = {});

}  // namespace emknot
