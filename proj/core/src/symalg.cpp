#include "emknot/symalg.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "emknot/errors.hpp"
#include "json.hpp"

namespace emknot {

namespace {

const cplx I(0.0, 1.0);

// Matrix of an invariant derivative on harmonic coefficient vectors of spin j.
// Ladder action: X_+ Y_{q} = -2i sqrt((j-q)(j+q+1)/2) Y_{q+1}, X_3 Y_q = -2i q Y_q,
// where q is n for L and m for R.
Eigen::MatrixXcd harmonic_operator(HalfInteger j, FieldKind kind, int a) {
  const int dim = j.twice() + 1;
  const int ny = dim * dim;
  const bool on_n = (kind == FieldKind::L);
  const double jv = j.value();
  auto ladder = [&](int sign) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(ny, ny);
    for (int im = 0; im < dim; ++im) {
      for (int in = 0; in < dim; ++in) {
        const int src = im * dim + in;
        const int iq = on_n ? in : im;
        const double q = -jv + iq;
        const int nq = iq + sign;
        if (nq < 0 || nq >= dim) continue;
        const double c = std::sqrt((jv - sign * q) * (jv + sign * q + 1.0) / 2.0);
        const int dst = on_n ? im * dim + nq : nq * dim + in;
        M(dst, src) = -2.0 * I * c;
      }
    }
    return M;
  };
  if (a == 2) {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(ny, ny);
    for (int im = 0; im < dim; ++im)
      for (int in = 0; in < dim; ++in) M(im * dim + in, im * dim + in) = -2.0 * I * (-jv + (on_n ? in : im));
    return M;
  }
  const Eigen::MatrixXcd up = ladder(+1);
  const Eigen::MatrixXcd down = ladder(-1);
  const double s = std::sqrt(2.0);
  if (a == 0) return (up + down) / s;
  return (up - down) / (I * s);
}

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

std::string magnitude_string(double x) {
  const double k = x * x;
  for (int d = 1; d <= 64; ++d) {
    const double kd = k * d;
    const double r = std::round(kd);
    if (r > 0.0 && std::abs(kd - r) <= 1e-9 * std::max(1.0, kd)) {
      long num = static_cast<long>(r);
      const long g = std::gcd(num, static_cast<long>(d));
      num /= g;
      const long den = d / g;
      if (den == 1) {
        const long root = std::lround(std::sqrt(static_cast<double>(num)));
        if (root * root == num) return std::to_string(root);
        return "sqrt(" + std::to_string(num) + ")";
      }
      const long rn = std::lround(std::sqrt(static_cast<double>(num)));
      const long rd = std::lround(std::sqrt(static_cast<double>(den)));
      if (rn * rn == num && rd * rd == den) return std::to_string(rn) + "/" + std::to_string(rd);
      return "sqrt(" + std::to_string(num) + "/" + std::to_string(den) + ")";
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

CoefficientOperator derive_d_action(HalfInteger j) {
  if (j.twice() < 0 || j.twice() > 4) throw DomainError("derive_d_action supports 0 <= j <= 2");
  const Eigen::MatrixXcd X = x_matrix(j);
  const int dim = j.twice() + 1;
  const int ny = dim * dim;
  CoefficientOperator op{j, {}, 0.0};
  const auto qr = X.colPivHouseholderQr();
  if (qr.rank() != X.cols()) throw std::runtime_error("coefficient map is not injective");
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXcd Dy =
        harmonic_operator(j, FieldKind::L, a) + harmonic_operator(j, FieldKind::R, a);
    // Lie derivative on the stacked components: Z'_c = D Z_c + 2 eps_abc Z_b
    Eigen::MatrixXcd lie = Eigen::MatrixXcd::Zero(3 * ny, 3 * ny);
    for (int c = 0; c < 3; ++c) {
      lie.block(c * ny, c * ny, ny, ny) = Dy;
      for (int b = 0; b < 3; ++b) {
        const double e = levi_civita(a, b, c);
        if (e != 0.0) lie.block(c * ny, b * ny, ny, ny) += 2.0 * e * Eigen::MatrixXcd::Identity(ny, ny);
      }
    }
    const Eigen::MatrixXcd rhs = -lie * X;
    const Eigen::MatrixXcd D = qr.solve(rhs);
    const double res = (X * D - rhs).cwiseAbs().maxCoeff();
    op.residual = std::max(op.residual, res);
    if (res > 1e-10) throw std::runtime_error("inconsistent linear system for D_" + std::to_string(a + 1));
    op.D[a] = D;
  }
  return op;
}

CoefficientOperator table4_operator(HalfInteger j) {
  const ModeCoefficients shape(j, 1.0);
  const int n = shape.size();
  CoefficientOperator op{j, {}, 0.0};
  for (auto& d : op.D) d = Eigen::MatrixXcd::Zero(n, n);
  auto add = [&](int a, int rm, int rn, cplx coef, int cm, int cn) {
    op.D[a](shape.index(h(rm), h(rn)), shape.index(h(cm), h(cn))) += coef;
  };
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);

  switch (j.twice()) {
    case 0: {
      add(0, 0, -2, s2 * I, 0, 0);
      add(0, 0, 0, s2 * I, 0, 2);
      add(0, 0, 0, s2 * I, 0, -2);
      add(0, 0, 2, s2 * I, 0, 0);
      add(1, 0, -2, -s2, 0, 0);
      add(1, 0, 0, s2, 0, -2);
      add(1, 0, 0, -s2, 0, 2);
      add(1, 0, 2, s2, 0, 0);
      add(2, 0, -2, -s2 * I, 0, -2);
      add(2, 0, 2, s2 * I, 0, 2);
      break;
    }
    case 1: {
      // m: -1/2 -> -1, +1/2 -> 1; n: down -3, - -1, + 1, up 3 (twice units)
      const int M = -1, P = 1, DN = -3, MI = -1, PL = 1, UP = 3;
      auto d1 = [&](int rm, int rn, std::initializer_list<std::tuple<double, int, int>> t) {
        for (auto [c, cm, cn] : t) add(0, rm, rn, I * c, cm, cn);
      };
      auto d2 = [&](int rm, int rn, std::initializer_list<std::tuple<double, int, int>> t) {
        for (auto [c, cm, cn] : t) add(1, rm, rn, c, cm, cn);
      };
      d1(M, DN, {{s3, M, MI}, {1, P, DN}});
      d1(M, MI, {{s3, M, DN}, {2, M, PL}, {1, P, MI}});
      d1(M, PL, {{2, M, MI}, {s3, M, UP}, {1, P, PL}});
      d1(M, UP, {{s3, M, PL}, {1, P, UP}});
      d1(P, DN, {{1, M, DN}, {s3, P, MI}});
      d1(P, MI, {{1, M, MI}, {s3, P, DN}, {2, P, PL}});
      d1(P, PL, {{1, M, PL}, {2, P, MI}, {s3, P, UP}});
      d1(P, UP, {{1, M, UP}, {s3, P, PL}});

      d2(M, DN, {{-s3, M, MI}, {-1, P, DN}});
      d2(M, MI, {{s3, M, DN}, {-2, M, PL}, {-1, P, MI}});
      d2(M, PL, {{2, M, MI}, {-s3, M, UP}, {-1, P, PL}});
      d2(M, UP, {{s3, M, PL}, {-1, P, UP}});
      d2(P, DN, {{1, M, DN}, {-s3, P, MI}});
      d2(P, MI, {{1, M, MI}, {s3, P, DN}, {-2, P, PL}});
      d2(P, PL, {{1, M, PL}, {2, P, MI}, {-s3, P, UP}});
      d2(P, UP, {{1, M, UP}, {s3, P, PL}});

      const int rows[8][2] = {{M, DN}, {M, MI}, {M, PL}, {M, UP}, {P, DN}, {P, MI}, {P, PL}, {P, UP}};
      const double d3[8] = {-4, -2, 0, 2, -2, 0, 2, 4};
      for (int k = 0; k < 8; ++k)
        if (d3[k] != 0.0) add(2, rows[k][0], rows[k][1], I * d3[k], rows[k][0], rows[k][1]);
      break;
    }
    case 2: {
      // m: - -2, 0 0, + 2; n: down -4, - -2, 0 0, + 2, up 4 (twice units)
      const int M = -2, Z = 0, P = 2, DN = -4, MI = -2, N0 = 0, PL = 2, UP = 4;
      auto d1 = [&](int rm, int rn, std::initializer_list<std::tuple<double, int, int>> t) {
        for (auto [c, cm, cn] : t) add(0, rm, rn, I * c, cm, cn);
      };
      auto d2 = [&](int rm, int rn, std::initializer_list<std::tuple<double, int, int>> t) {
        for (auto [c, cm, cn] : t) add(1, rm, rn, c, cm, cn);
      };
      d1(M, DN, {{2, M, MI}, {s2, Z, DN}});
      d1(M, MI, {{2, M, DN}, {s6, M, N0}, {s2, Z, MI}});
      d1(M, N0, {{s6, M, MI}, {s6, M, PL}, {s2, Z, N0}});
      d1(M, PL, {{s6, M, N0}, {2, M, UP}, {s2, Z, PL}});
      d1(M, UP, {{2, M, PL}, {s2, P, UP}});
      d1(Z, DN, {{s2, M, DN}, {2, Z, MI}, {s2, P, DN}});
      d1(Z, MI, {{s2, M, MI}, {s2 * s2, Z, DN}, {s2 * s3, Z, N0}, {s2, P, MI}});
      d1(Z, N0, {{s2, M, N0}, {s2 * s3, Z, MI}, {s2 * s3, Z, PL}, {s2, P, N0}});
      d1(Z, PL, {{s2, M, PL}, {s2 * s3, Z, N0}, {s2 * s2, Z, UP}, {s2, P, PL}});
      d1(Z, UP, {{s2, M, UP}, {2, Z, PL}, {s2, P, UP}});
      d1(P, DN, {{s2, Z, DN}, {2, P, MI}});
      d1(P, MI, {{s2, Z, MI}, {2, P, DN}, {s6, P, N0}});
      d1(P, N0, {{s2, Z, N0}, {s6, P, MI}, {s6, P, PL}});
      d1(P, PL, {{s2, Z, PL}, {s6, P, N0}, {2, P, UP}});
      d1(P, UP, {{s2, Z, UP}, {2, P, PL}});

      d2(M, DN, {{-2, M, MI}, {-s2, Z, DN}});
      d2(M, MI, {{2, M, DN}, {-s6, M, N0}, {-s2, Z, MI}});
      d2(M, N0, {{s6, M, MI}, {-s6, M, PL}, {-s2, Z, N0}});
      d2(M, PL, {{s6, M, N0}, {-2, M, UP}, {-s2, Z, PL}});
      d2(M, UP, {{2, M, PL}, {-s2, Z, UP}});
      d2(Z, DN, {{s2, M, DN}, {-2, Z, MI}, {-s2, P, DN}});
      d2(Z, MI, {{s2, M, MI}, {s2 * s2, Z, DN}, {-s2 * s3, Z, N0}, {-s2, P, MI}});
      d2(Z, N0, {{s2, M, N0}, {s2 * s3, Z, MI}, {-s2 * s3, Z, PL}, {-s2, P, N0}});
      d2(Z, PL, {{s2, M, PL}, {s2 * s3, Z, N0}, {-s2 * s2, Z, UP}, {-s2, P, PL}});
      d2(Z, UP, {{s2, M, UP}, {2, Z, PL}, {-s2, P, UP}});
      d2(P, DN, {{s2, Z, DN}, {-2, P, MI}});
      d2(P, MI, {{s2, Z, MI}, {2, P, DN}, {-s6, P, N0}});
      d2(P, N0, {{s2, Z, N0}, {s6, P, MI}, {-s6, P, PL}});
      d2(P, PL, {{s2, Z, PL}, {s6, P, N0}, {-2, P, UP}});
      d2(P, UP, {{s2, Z, UP}, {2, P, PL}});

      const int ms[3] = {M, Z, P};
      const int ns[5] = {DN, MI, N0, PL, UP};
      const double d3[15] = {-6, -4, -2, 0, 2, -4, -2, 0, 2, 4, -2, 0, 2, 4, 6};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 5; ++b) {
          const double v = d3[a * 5 + b];
          if (v != 0.0) add(2, ms[a], ns[b], I * v, ms[a], ns[b]);
        }
      break;
    }
    default: throw DomainError("operator table covers j = 0, 1/2, 1 only");
  }
  return op;
}

double closure_defect(const CoefficientOperator& op) {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    const Eigen::MatrixXcd comm = op.D[a] * op.D[b] - op.D[b] * op.D[a];
    worst = std::max(worst, (comm + 2.0 * op.D[c]).cwiseAbs().maxCoeff());
  }
  return worst;
}

double anti_hermiticity_defect(const CoefficientOperator& op) {
  double worst = 0.0;
  for (const auto& d : op.D) worst = std::max(worst, (d + d.adjoint()).cwiseAbs().maxCoeff());
  return worst;
}

OperatorDiff diff_operators(const CoefficientOperator& derived, const CoefficientOperator& table, double tol) {
  if (derived.j != table.j) throw DomainError("operator diff needs equal spins");
  OperatorDiff diff;
  diff.j = derived.j;
  for (int a = 0; a < 3; ++a) {
    const Eigen::MatrixXcd& A = derived.D[a];
    const Eigen::MatrixXcd& B = table.D[a];
    for (int r = 0; r < A.rows(); ++r)
      for (int c = 0; c < A.cols(); ++c) {
        const double d = std::abs(A(r, c) - B(r, c));
        diff.max_abs = std::max(diff.max_abs, d);
        if (d > tol) diff.mismatches.push_back({a, r, c, A(r, c), B(r, c)});
      }
  }
  return diff;
}

std::string mode_label(HalfInteger j, int k) {
  const ModeCoefficients shape(j, 1.0);
  const auto [m, n] = shape.label(k);
  return "(" + m.to_string() + "," + n.to_string() + ")";
}

std::string format_diff(const OperatorDiff& diff) {
  std::ostringstream os;
  os << "j=" << diff.j.to_string() << ": ";
  if (diff.matches()) {
    os << "derived operators match the table\n";
    return os.str();
  }
  os << diff.mismatches.size() << " mismatching entries\n";
  for (const auto& m : diff.mismatches) {
    os << "  D" << (m.a + 1) << " row " << mode_label(diff.j, m.row) << " col " << mode_label(diff.j, m.col)
       << ": derived " << exact_string(m.derived) << ", table " << exact_string(m.table) << "\n";
  }
  return os.str();
}

std::string exact_string(cplx z) {
  const double tiny = 1e-12;
  const double re = std::abs(z.real()) < tiny ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < tiny ? 0.0 : z.imag();
  if (re == 0.0 && im == 0.0) return "0";
  std::string out;
  if (re != 0.0) out = (re < 0 ? "-" : "") + magnitude_string(std::abs(re));
  if (im != 0.0) {
    const std::string mag = magnitude_string(std::abs(im));
    if (im < 0) out += "-";
    else if (!out.empty()) out += "+";
    out += (mag == "1" ? "" : mag) + "i";
  }
  return out;
}

std::string dump_operator_json(const CoefficientOperator& op) {
  using nlohmann::json;
  const ModeCoefficients shape(op.j, 1.0);
  json doc;
  doc["j"] = op.j.to_string();
  json order = json::array();
  for (int k = 0; k < shape.size(); ++k) order.push_back(mode_label(op.j, k));
  doc["order"] = order;
  for (int a = 0; a < 3; ++a) {
    json rows = json::array();
    for (int r = 0; r < op.D[a].rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < op.D[a].cols(); ++c) row.push_back(exact_string(op.D[a](r, c)));
      rows.push_back(row);
    }
    doc["D" + std::to_string(a + 1)] = rows;
  }
  return doc.dump(2);
}

CovarianceResult rotation_covariance_check(const ModeCoefficients& lambda, const CoefficientOperator& op,
                                           const QuadratureGrid& grid, VectorDensity q, int workers) {
  if (op.j != lambda.j()) throw DomainError("operator and coefficients have different spins");
  CovarianceResult res;
  const Eigen::Vector3d Q = vector_charge_sesquilinear(q, lambda, lambda, grid, workers).real();
  const double E = compute_charges(lambda, grid, workers).E;
  const int power = q == VectorDensity::P ? 0 : (q == VectorDensity::L ? 1 : 2);
  res.scale = E * std::pow(lambda.ell(), power);
  for (int a = 0; a < 3; ++a) {
    const ModeCoefficients dl = lambda.with_values(op.D[a] * lambda.values());
    const Vector3cd dq = vector_charge_sesquilinear(q, dl, lambda, grid, workers) +
                         vector_charge_sesquilinear(q, lambda, dl, grid, workers);
    for (int b = 0; b < 3; ++b) {
      double expect = 0.0;
      for (int c = 0; c < 3; ++c) expect += 2.0 * levi_civita(a, b, c) * Q[c];
      res.max_deviation = std::max(res.max_deviation, std::abs(dq[b] - expect));
    }
    const ModeCoefficients plus = lambda.with_values(lambda.values() + dl.values());
    const ModeCoefficients minus = lambda.with_values(lambda.values() - dl.values());
    const double dE = 0.5 * (compute_charges(plus, grid, workers).E - compute_charges(minus, grid, workers).E);
    res.max_energy_derivative = std::max(res.max_energy_derivative, std::abs(dE));
  }
  return res;
}

}  // namespace emknot
