#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "emknot/charges.hpp"
#include "emknot/half_integer.hpp"

namespace emknot {

/// The SO(3) generators D_1, D_2, D_3 acting on flattened mode coefficients
/// (ModeCoefficients order). A matrix acts as Lambda -> D Lambda.
struct CoefficientOperator {
  HalfInteger j;
  std::array<Eigen::MatrixXcd, 3> D;
  double residual = 0.0;  ///< solve residual for derived operators
};

/// Solves for D_a from invariance of the complex potential under the
/// stability-subgroup generators. Supports j <= 2; throws DomainError beyond
/// that and std::runtime_error if the linear system is inconsistent.
CoefficientOperator derive_d_action(HalfInteger j);

/// Printed operator table for j in {0, 1/2, 1}, transcribed as is.
CoefficientOperator table4_operator(HalfInteger j);

/// Maximum of |[D_a, D_b] + 2 eps_abc D_c| over cyclic (a, b, c). As matrices
/// on coefficient vectors the generators close with -2; the induced action on
/// quadratic forms closes with +2.
double closure_defect(const CoefficientOperator& op);

/// Maximum of |D_a + D_a^H|.
double anti_hermiticity_defect(const CoefficientOperator& op);

struct OperatorMismatch {
  int a;    ///< 0-based generator index
  int row;  ///< ModeCoefficients index
  int col;
  cplx derived;
  cplx table;
};

struct OperatorDiff {
  HalfInteger j;
  std::vector<OperatorMismatch> mismatches;
  double max_abs = 0.0;
  bool matches() const { return mismatches.empty(); }
};

OperatorDiff diff_operators(const CoefficientOperator& derived, const CoefficientOperator& table, double tol = 1e-9);

/// Human-readable diff, one line per mismatching entry.
std::string format_diff(const OperatorDiff& diff);

/// Entry as an exact string when it is a signed square root of a small
/// rational times 1 or i: "-2i", "sqrt(2)i", "sqrt(3/2)", "0".
std::string exact_string(cplx z);

/// JSON dump with exact-string entries.
std::string dump_operator_json(const CoefficientOperator& op);

struct CovarianceResult {
  double max_deviation = 0.0;  ///< max |D_a Q_b - 2 eps_abc Q_c|
  double scale = 0.0;          ///< numeric energy times the charge's ell power
  double max_energy_derivative = 0.0;
};

/// Checks D_a Q_b = 2 eps_abc Q_c for the vector charge Q (P or L), with
/// D_a Q_b := B_b(D_a Lambda, Lambda) + B_b(Lambda, D_a Lambda), and that the
/// energy is stationary along each D_a.
CovarianceResult rotation_covariance_check(const ModeCoefficients& lambda, const CoefficientOperator& op,
                                           const QuadratureGrid& grid, VectorDensity q = VectorDensity::P,
                                           int workers = 0);

/// "(m,n)" label of a flattened coefficient index.
std::string mode_label(HalfInteger j, int k);

}  // namespace emknot
