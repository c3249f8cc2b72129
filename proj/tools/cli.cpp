#include "cli.hpp"

#include <array>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "emknot/charges.hpp"
#include "emknot/errors.hpp"
#include "emknot/fieldlines.hpp"
#include "emknot/io.hpp"
#include "emknot/reference.hpp"

namespace emknot::cli {

namespace {

bool is_preset(const std::string& p) { return p == "hopfian-tt" || p == "hopfian-rot"; }

std::vector<ReferenceValue> preset_references(const RunConfig& cfg) {
  const double param = cfg.param.value_or(0.0);
  if (cfg.preset == "hopfian-tt") return reference::hopfian_tt_table(param);
  if (cfg.preset == "hopfian-rot") return reference::hopfian_rotated_table(param);
  return {};
}

std::string replace_index(std::string pattern, std::size_t i) {
  const std::string key = "{i}";
  for (auto pos = pattern.find(key); pos != std::string::npos; pos = pattern.find(key))
    pattern.replace(pos, key.size(), std::to_string(i));
  return pattern;
}

}  // namespace

GridSize parse_grid(const std::string& s) {
  std::array<int, 3> v{};
  std::istringstream is(s);
  std::string part;
  int k = 0;
  while (std::getline(is, part, ',')) {
    if (k == 3) throw DomainError("grid needs three comma-separated sizes, got '" + s + "'");
    std::size_t used = 0;
    try {
      v[k] = std::stoi(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw DomainError("bad grid size '" + part + "'");
    ++k;
  }
  if (k != 3) throw DomainError("grid needs three comma-separated sizes, got '" + s + "'");
  return {v[0], v[1], v[2]};
}

void validate(const RunConfig& cfg) {
  if (cfg.subcommand != "charges" && cfg.subcommand != "verify" && cfg.subcommand != "trace")
    throw DomainError("unknown subcommand '" + cfg.subcommand + "'");
  if (cfg.grid.n_chi < 8 || cfg.grid.n_theta < 8 || cfg.grid.n_phi < 8)
    throw DomainError("grid sizes must be at least 8");
  if (cfg.format != "json" && cfg.format != "csv") throw DomainError("format must be json or csv");
  parse_field_selector(cfg.field);
  if (!cfg.preset.empty() && !is_preset(cfg.preset)) throw DomainError("unknown preset '" + cfg.preset + "'");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(cfg.max_arc > 0.0)) throw DomainError("max arc length must be positive");
  if (cfg.workers < 0) throw DomainError("workers must be non-negative");
  if (cfg.subcommand != "verify") {
    if (cfg.input.empty() == cfg.preset.empty()) throw DomainError("give exactly one of --in and --preset");
  }
}

std::vector<ModeCoefficients> load_input(const RunConfig& cfg) {
  if (!cfg.input.empty()) return load_coefficients(cfg.input);
  const double param = cfg.param.value_or(0.0);
  if (cfg.preset == "hopfian-tt") return {hopfian_tt_coefficients(param)};
  if (cfg.preset == "hopfian-rot") return {hopfian_rotated_coefficients(param)};
  throw DomainError("no coefficient input");
}

int cmd_charges(const RunConfig& cfg, std::ostream& log) {
  const std::vector<ModeCoefficients> sets = load_input(cfg);
  ReportOptions opt;
  if (cfg.tol) opt.reference_tol = *cfg.tol;
  opt.workers = cfg.workers;
  opt.extra_references = preset_references(cfg);

  std::vector<std::pair<ModeCoefficients, ChargeReport>> reports;
  bool refs_ok = true;
  bool converged = true;
  for (const auto& lambda : sets) {
    if (lambda.is_zero()) throw DomainError("all coefficients are zero for j = " + lambda.j().to_string());
    ChargeReport r = charge_report(lambda, cfg.grid, opt);
    log << "j=" << lambda.j().to_string() << " E=" << r.charges.E << " max reference deviation "
        << r.max_reference_deviation << (r.references_ok ? " (ok)" : " (FAIL)") << ", grid doubling change "
        << r.max_doubling_change << (r.converged ? " (converged)" : " (NOT converged)") << "\n";
    refs_ok = refs_ok && r.references_ok;
    converged = converged && r.converged;
    reports.emplace_back(lambda, std::move(r));
  }
  write_text(cfg.out, cfg.format == "csv" ? report_to_csv(reports) : report_to_json(reports));
  if (!converged) return kConvergence;
  if (!refs_ok) return kIdentity;
  return kOk;
}

int cmd_trace(const RunConfig& cfg, std::ostream& log) {
  const std::vector<ModeCoefficients> sets = load_input(cfg);
  if (sets.size() != 1) throw DomainError("trace takes a single coefficient set");
  const ModeCoefficients& lambda = sets.front();
  if (lambda.is_zero()) throw DomainError("all coefficients are zero; nothing to trace");

  TraceRequest req;
  req.lambda = &lambda;
  req.field = parse_field_selector(cfg.field);
  req.t = cfg.t;
  req.max_arc_length = cfg.max_arc;
  if (cfg.tol) req.closure_tolerance = *cfg.tol;
  validate(req);

  const std::vector<Eigen::Vector3d> seeds = seed_grid(cfg.seeds);
  const XCoefficients x = x_coefficients(lambda);
  const double threshold = zero_field_threshold(lambda);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (!(field_at(lambda, x, req.field, req.t, seeds[i]).norm() > threshold)) {
      std::ostringstream os;
      os << "field " << cfg.field << " vanishes at seed " << i << " (" << seeds[i].transpose() << ")";
      throw DomainError(os.str());
    }
  }

  const std::vector<TraceOutcome> lines = trace_all(req, seeds, cfg.workers);
  int closed = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].line.closed) ++closed;
    if (!lines[i].ok) log << "warning: seed " << i << ": " << lines[i].error << "\n";
  }
  log << lines.size() << " polylines, " << closed << " closed\n";

  auto render = [&](const std::vector<TraceOutcome>& v) {
    return cfg.format == "csv" ? polylines_to_csv(v) : polylines_to_json(v);
  };
  if (cfg.out.find("{i}") != std::string::npos) {
    for (std::size_t i = 0; i < lines.size(); ++i) write_text(replace_index(cfg.out, i), render({lines[i]}));
  } else {
    write_text(cfg.out, render(lines));
  }
  return kOk;
}

int run(const RunConfig& cfg, std::ostream& log) {
  try {
    validate(cfg);
    if (cfg.subcommand == "charges") return cmd_charges(cfg, log);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, log);
    return cmd_trace(cfg, log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
  }
  return kUsage;
}

int main_entry(int argc, char** argv, std::ostream& log) {
  CLI::App app{"Rational electromagnetic knots: charges, verification and field lines"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid = "64,32,64";
  std::string suites;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--grid", grid, "Quadrature nodes Nchi,Ntheta,Nphi")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
    sub->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Tolerance override");
    sub->add_option("--workers", cfg.workers, "Worker threads (EMKNOT_WORKERS when omitted)");
  };
  auto inputs = [&](CLI::App* sub) {
    sub->add_option("--in", cfg.input, "Coefficient file");
    sub->add_option("--preset", cfg.preset, "hopfian-tt or hopfian-rot");
    sub->add_option("--param", cfg.param, "Preset parameter (c or theta)");
  };

  CLI::App* charges = app.add_subcommand("charges", "Conformal charges with closed-form comparison");
  common(charges);
  inputs(charges);

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites on seeded random coefficients");
  common(verify);
  verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  verify->add_option("--suite", suites,
                     "Comma-separated suites: orthonormality, maxwell, identities, symalg, convergence, tables, all");

  CLI::App* trace = app.add_subcommand("trace", "Trace field lines and export polylines");
  common(trace);
  inputs(trace);
  trace->add_option("--field", cfg.field, "E or B")->capture_default_str();
  trace->add_option("--t", cfg.t, "Minkowski time")->capture_default_str();
  trace->add_option("--seeds", cfg.seeds, "shell:R:N | box:x0,y0,z0:x1,y1,z1:nx,ny,nz | point:x,y,z")
      ->capture_default_str();
  trace->add_option("--max-arc", cfg.max_arc, "Arc-length limit in units of ell")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, std::cout, log) == 0 ? kOk : kUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();
  try {
    cfg.grid = parse_grid(grid);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::istringstream ss(suites);
  for (std::string s; std::getline(ss, s, ',');)
    if (!s.empty()) cfg.suites.push_back(s);
  return run(cfg, log);
}

}  // namespace emknot::cli
