#include <cmath>
#include <map>
#include <random>

#include "cli.hpp"
#include "emknot/charges.hpp"
#include "emknot/errors.hpp"
#include "emknot/harmonics.hpp"
#include "emknot/io.hpp"
#include "emknot/symalg.hpp"
#include "json.hpp"

namespace emknot::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Check {
  std::string name;
  double deviation;
  double tolerance;
  bool ok() const { return deviation <= tolerance; }
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok()) return false;
    return true;
  }
  void add(std::string n, double dev, double tol) { checks.push_back({std::move(n), dev, tol}); }
};

struct Draw {
  ModeCoefficients lambda;
  ChargeSet coarse;
};

const std::vector<std::string> kDefaultSuites = {"orthonormality", "maxwell", "identities", "symalg", "convergence"};

double relative(double value, double ref, double scale) {
  const double den = std::abs(ref) > 1e-8 * scale ? std::abs(ref) : scale;
  return std::abs(value - ref) / den;
}

class Verifier {
 public:
  explicit Verifier(const RunConfig& cfg) : cfg_(cfg), grid_(cfg.grid), rng_(cfg.seed) {}

  SuiteResult run(const std::string& name) {
    if (name == "orthonormality") return orthonormality();
    if (name == "maxwell") return maxwell();
    if (name == "identities") return identities();
    if (name == "symalg") return symalg();
    if (name == "convergence") return convergence();
    if (name == "tables") return tables();
    throw DomainError("unknown suite '" + name + "'");
  }

 private:
  const std::vector<Draw>& draws() {
    if (!draws_.empty()) return draws_;
    std::uniform_real_distribution<double> ell(0.5, 2.0);
    for (int j2 : {0, 1, 2}) {
      for (int k = 0; k < 2; ++k) {
        ModeCoefficients l = random_coefficients(HalfInteger::from_twice(j2), ell(rng_), rng_);
        ChargeSet c = compute_charges(l, grid_, cfg_.workers);
        draws_.push_back({std::move(l), c});
      }
    }
    return draws_;
  }

  static std::string tag(const ModeCoefficients& l, int k) {
    return "j=" + l.j().to_string() + "#" + std::to_string(k) + " ";
  }

  SuiteResult orthonormality() {
    SuiteResult r{"orthonormality", {}, {}};
    for (int j2 : {0, 1, 2, 3}) {
      const HalfInteger j = HalfInteger::from_twice(j2);
      const Eigen::MatrixXcd g = gram_matrix(j, grid_, cfg_.workers);
      const double dev = (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
      r.add("gram j=" + j.to_string(), dev, 1e-10);
    }
    return r;
  }

  SuiteResult maxwell() {
    SuiteResult r{"maxwell", {}, {}};
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> ell_dist(0.5, 2.0);
    for (int j2 : {0, 1, 2}) {
      const ModeCoefficients l = random_coefficients(HalfInteger::from_twice(j2), ell_dist(rng_), rng_);
      const XCoefficients x = x_coefficients(l);
      double field = 0.0, gauge = 0.0;
      for (int k = 0; k < 25; ++k) {
        const double s = l.ell();
        const MinkowskiEvent e{s * u(rng_), s * u(rng_), s * u(rng_), s * u(rng_)};
        field = std::max(field, maxwell_residual(l, x, e).max());
        gauge = std::max(gauge, gauge_identity_residual(l, e));
      }
      r.add("field equations j=" + l.j().to_string(), field, 1e-5);
      r.add("gauge identity j=" + l.j().to_string(), gauge, 1e-10);
    }
    return r;
  }

  SuiteResult identities() {
    SuiteResult r{"identities", {}, {}};
    const double tz = cfg_.tol.value_or(1e-10);
    const double tr = cfg_.tol.value_or(1e-9);
    int k = 0;
    for (const auto& d : draws()) {
      const ChargeSet& c = d.coarse;
      const double ell = d.lambda.ell();
      const double l2 = ell * ell;
      const std::string p = tag(d.lambda, k++);
      r.add(p + "E closed form", relative(c.E, energy_closed(d.lambda), c.E), tz);
      for (const char* n : {"K1", "K2", "K3", "D", "Pr", "Ptheta", "Lr", "Vr"})
        r.add(p + n + " = 0", std::abs(c.get(n)) / (c.E * std::pow(ell, ell_power(n))), tz);
      r.add(p + "V0 = ell^2 E", relative(c.V0, l2 * c.E, l2 * c.E), tr);
      r.add(p + "V = ell^2 P",
            (c.V - l2 * c.P).norm() / std::max(l2 * c.P.norm(), 1e-8 * l2 * c.E), tr);
      if (d.lambda.j().twice() == 0) {
        const double P3 = c.P[2];
        const double sP = c.E, sL = c.E * ell, sV = c.E * l2, sV3 = sV * ell;
        r.add(p + "L = -ell P", (c.L + ell * c.P).norm() / std::max(ell * c.P.norm(), 1e-8 * sL), tr);
        r.add(p + "Pphi = ell P3", relative(c.P_sph[2], ell * P3, sP * ell), tr);
        r.add(p + "Ltheta = 4/3 ell^2 P3", relative(c.L_sph[1], 4.0 / 3.0 * l2 * P3, sV), tr);
        r.add(p + "Lphi = -1/3 ell^2 P3", relative(c.L_sph[2], -1.0 / 3.0 * l2 * P3, sV), tr);
        r.add(p + "Vtheta = -4/3 ell^3 P3", relative(c.V_sph[1], -4.0 / 3.0 * l2 * ell * P3, sV3), tr);
        r.add(p + "Vphi = -5/3 ell^3 P3", relative(c.V_sph[2], -5.0 / 3.0 * l2 * ell * P3, sV3), tr);
      }
    }
    return r;
  }

  SuiteResult convergence() {
    SuiteResult r{"convergence", {}, {}};
    const QuadratureGrid fine(grid_.size().doubled());
    int k = 0;
    for (const auto& d : draws()) {
      const ChargeSet f = compute_charges(d.lambda, fine, cfg_.workers);
      const std::vector<double> a = d.coarse.as_vector();
      const std::vector<double> b = f.as_vector();
      double worst = 0.0;
      std::string which;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string& n = ChargeSet::names()[i];
        const double dev = std::abs(a[i] - b[i]) / (d.coarse.E * std::pow(d.lambda.ell(), ell_power(n)));
        if (dev >= worst) {
          worst = dev;
          which = n;
        }
      }
      r.add(tag(d.lambda, k++) + "grid doubling (worst " + which + ")", worst, 1e-10);
    }
    return r;
  }

  SuiteResult symalg() {
    SuiteResult r{"symalg", {}, {}};
    std::map<int, CoefficientOperator> ops;
    for (int j2 : {0, 1, 2, 3}) {
      const HalfInteger j = HalfInteger::from_twice(j2);
      CoefficientOperator op = derive_d_action(j);
      r.add("closure j=" + j.to_string(), closure_defect(op), 1e-12);
      r.add("anti-hermitian j=" + j.to_string(), anti_hermiticity_defect(op), 1e-12);
      ops.emplace(j2, std::move(op));
    }
    int k = 0;
    for (const auto& d : draws()) {
      const std::string p = tag(d.lambda, k++);
      const CoefficientOperator& op = ops.at(d.lambda.j().twice());
      for (VectorDensity q : {VectorDensity::P, VectorDensity::L}) {
        const CovarianceResult c = rotation_covariance_check(d.lambda, op, grid_, q, cfg_.workers);
        const std::string qn = q == VectorDensity::P ? "P" : "L";
        r.add(p + "rotation covariance " + qn, c.max_deviation / c.scale, 1e-9);
        if (q == VectorDensity::P) r.add(p + "energy invariance", c.max_energy_derivative / d.coarse.E, 1e-9);
      }
    }
    for (int j2 : {0, 1, 2}) {
      const HalfInteger j = HalfInteger::from_twice(j2);
      const OperatorDiff diff = diff_operators(ops.at(j2), table4_operator(j));
      std::string text = format_diff(diff);
      if (!text.empty() && text.back() == '\n') text.pop_back();
      r.notes.push_back("printed operator table vs derived, " + text);
    }
    return r;
  }

  SuiteResult tables() {
    SuiteResult r{"tables", {}, {}};
    const double tol = cfg_.tol.value_or(1e-9);
    int k = 0;
    for (const auto& d : draws()) {
      const std::string p = tag(d.lambda, k++);
      if (d.lambda.j().twice() == 0) {
        const double ell = d.lambda.ell();
        const ChargeSet& c = d.coarse;
        r.add(p + "L = -ell^2 P",
              (c.L + ell * ell * c.P).norm() / std::max(ell * ell * c.P.norm(), 1e-8 * c.E * ell), tol);
      }
      for (const auto& ref : reference_charges(d.lambda)) {
        const double scale = d.coarse.E * std::pow(d.lambda.ell(), ell_power(ref.name));
        r.add(p + ref.name, relative(d.coarse.get(ref.name), ref.value, scale), tol);
      }
    }
    return r;
  }

  const RunConfig& cfg_;
  QuadratureGrid grid_;
  std::mt19937_64 rng_;
  std::vector<Draw> draws_;
};

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> suites = cfg.suites.empty() ? kDefaultSuites : cfg.suites;
  if (suites.size() == 1 && suites.front() == "all") {
    suites = kDefaultSuites;
    suites.push_back("tables");
  }
  log << "seed: " << cfg.seed << "\n";
  Verifier v(cfg);
  ojson summary;
  summary["seed"] = cfg.seed;
  summary["grid"] = {cfg.grid.n_chi, cfg.grid.n_theta, cfg.grid.n_phi};
  ojson list = ojson::array();
  bool identity_fail = false;
  bool convergence_fail = false;
  for (const auto& name : suites) {
    const SuiteResult r = v.run(name);
    const bool pass = r.pass();
    if (!pass) (name == "convergence" ? convergence_fail : identity_fail) = true;
    const Check* worst = nullptr;
    for (const auto& c : r.checks)
      if (!worst || c.deviation / c.tolerance > worst->deviation / worst->tolerance) worst = &c;
    ojson s;
    s["name"] = r.name;
    s["pass"] = pass;
    s["checks"] = r.checks.size();
    if (worst) s["worst"] = {{"check", worst->name}, {"deviation", worst->deviation}, {"tolerance", worst->tolerance}};
    ojson failed = ojson::array();
    for (const auto& c : r.checks)
      if (!c.ok()) failed.push_back({{"check", c.name}, {"deviation", c.deviation}, {"tolerance", c.tolerance}});
    s["failed"] = failed;
    s["notes"] = r.notes;
    list.push_back(s);
    log << (pass ? "PASS " : "FAIL ") << name;
    if (worst) log << "  worst " << worst->name << ": " << worst->deviation << " (tol " << worst->tolerance << ")";
    log << "\n";
    for (const auto& n : r.notes) log << "  " << n << "\n";
  }
  const int code = convergence_fail ? kConvergence : (identity_fail ? kIdentity : kOk);
  summary["suites"] = list;
  summary["exit_code"] = code;
  write_text(cfg.out, summary.dump(2) + "\n");
  return code;
}

}  // namespace emknot::cli
