#include "emknot/fieldlines.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "emknot/charges.hpp"
#include "emknot/errors.hpp"
#include "emknot/quadrature.hpp"

namespace emknot {

namespace {

using Vec = Eigen::Vector3d;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct NullField {
  Vec where;
};

class Direction {
 public:
  Direction(const TraceRequest& req)
      : lambda_(*req.lambda), x_(x_coefficients(*req.lambda)), field_(req.field), t_(req.t),
        threshold_(zero_field_threshold(*req.lambda)) {}

  Vec operator()(const Vec& p) const {
    const Vec f = field_at(lambda_, x_, field_, t_, p);
    const double n = f.norm();
    if (!(n > threshold_)) throw NullField{p};
    return f / n;
  }

 private:
  const ModeCoefficients& lambda_;
  XCoefficients x_;
  FieldSelector field_;
  double t_;
  double threshold_;
};

double parse_number(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("bad number '" + s + "' in seed spec '" + spec + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw DomainError("bad number '" + s + "' in seed spec '" + spec + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

Vec parse_triple(const std::string& s, const std::string& spec) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw DomainError("expected x,y,z in seed spec '" + spec + "'");
  return {parse_number(parts[0], spec), parse_number(parts[1], spec), parse_number(parts[2], spec)};
}

int parse_count(const std::string& s, const std::string& spec) {
  const double v = parse_number(s, spec);
  if (v < 1 || v != std::floor(v) || v > 1e7) throw DomainError("bad count '" + s + "' in seed spec '" + spec + "'");
  return static_cast<int>(v);
}

}  // namespace

std::string to_string(FieldSelector f) { return f == FieldSelector::E ? "E" : "B"; }

FieldSelector parse_field_selector(const std::string& s) {
  if (s == "E") return FieldSelector::E;
  if (s == "B") return FieldSelector::B;
  throw DomainError("field must be E or B, got '" + s + "'");
}

void validate(const TraceRequest& req) {
  if (req.lambda == nullptr) throw DomainError("trace request has no coefficients");
  if (!(req.max_arc_length > 0.0) || !(req.step_tolerance > 0.0) || !(req.closure_tolerance > 0.0) ||
      !(req.nominal_step > 0.0) || !(req.max_turn > 0.0)) {
    throw DomainError("trace tolerances must be positive");
  }
  if (!req.seed.allFinite() || !std::isfinite(req.t)) throw DomainError("seed must be finite");
}

double zero_field_threshold(const ModeCoefficients& lambda) {
  const double ell = lambda.ell();
  return 1e-12 * std::sqrt(energy_closed(lambda) / (ell * ell * ell));
}

Vec field_at(const ModeCoefficients& lambda, const XCoefficients& x, FieldSelector f, double t, const Vec& pos) {
  const MinkowskiField m = minkowski_fields(lambda, x, MinkowskiEvent::from(t, pos));
  return f == FieldSelector::E ? m.E : m.B;
}

Polyline trace(const TraceRequest& req) {
  validate(req);
  const double ell = req.lambda->ell();
  const double max_s = req.max_arc_length * ell;
  const double tol = req.step_tolerance * ell;
  const double close_tol = req.closure_tolerance * ell;
  const double h_max = req.nominal_step * ell;
  const double h_min = 1e-12 * ell;

  Polyline line;
  line.seed = req.seed;
  line.field = req.field;
  line.points.push_back(req.seed);
  line.s.push_back(0.0);

  const Direction dir(req);
  Vec x = req.seed;
  Vec k1;
  try {
    k1 = dir(x);
  } catch (const NullField&) {
    throw TraceError(TraceError::Kind::ZeroField, "field vanishes at the seed", line);
  }
  const Vec seed_tangent = k1;
  double s = 0.0;
  double h = std::min(h_max, 1e-3 * ell);
  bool left_seed = false;

  try {
    while (s < max_s) {
      h = std::min({h, h_max, max_s - s});
      if (h < h_min) {
        if (max_s - s < h_min) break;
        throw TraceError(TraceError::Kind::StepUnderflow, "step size underflow", line);
      }
      const Vec k2 = dir(x + h * a21 * k1);
      const Vec k3 = dir(x + h * (a31 * k1 + a32 * k2));
      const Vec k4 = dir(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec k5 = dir(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec k6 = dir(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const Vec xn = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Vec k7 = dir(xn);
      const double err = (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).norm();
      const double turn = std::acos(std::clamp(k1.dot(k7), -1.0, 1.0));

      const double f_err = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
      const double f_turn = turn > 0.0 ? 0.9 * req.max_turn / turn : 5.0;
      const double factor = std::clamp(std::min(f_err, f_turn), 0.2, 5.0);
      if (err > tol || turn > req.max_turn) {
        h *= std::min(factor, 0.9);
        continue;
      }

      const Vec x0 = x;
      const double s0 = s;
      x = xn;
      s += h;
      k1 = k7;

      const double d_seed = (x - req.seed).norm();
      if (!left_seed && d_seed > 10.0 * close_tol) left_seed = true;
      if (left_seed) {
        const Vec seg = x - x0;
        const double len2 = seg.squaredNorm();
        const double u = len2 > 0.0 ? std::clamp((req.seed - x0).dot(seg) / len2, 0.0, 1.0) : 0.0;
        const Vec closest = x0 + u * seg;
        const double gap = (closest - req.seed).norm();
        if (gap <= close_tol && seed_tangent.dot(seg.normalized()) > 0.999) {
          line.points.push_back(closest);
          line.s.push_back(s0 + u * h);
          line.closed = true;
          line.closure_gap = gap;
          line.arc_length = line.s.back();
          return line;
        }
      }
      line.points.push_back(x);
      line.s.push_back(s);
      h *= factor;
    }
  } catch (const NullField&) {
    line.arc_length = s;
    throw TraceError(TraceError::Kind::StepUnderflow, "field null encountered near the last point", line);
  }
  line.arc_length = s;
  return line;
}

std::vector<TraceOutcome> trace_all(const TraceRequest& base, const std::vector<Vec>& seeds, int workers) {
  std::vector<TraceOutcome> out(seeds.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      TraceRequest req = base;
      req.seed = seeds[i];
      try {
        out[i].line = trace(req);
      } catch (const TraceError& e) {
        out[i].ok = false;
        out[i].error = e.what();
        out[i].line = e.partial();
      }
    }
  };
  const int nw = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(seeds.size())));
  if (nw == 1) {
    run();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nw; ++w) threads.emplace_back(run);
    for (auto& t : threads) t.join();
  }
  return out;
}

std::vector<Vec> fibonacci_shell(double radius, int count) {
  if (!(radius > 0.0) || count < 1) throw DomainError("shell needs a positive radius and count");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Vec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    out.emplace_back(radius * r * std::cos(phi), radius * r * std::sin(phi), radius * z);
  }
  return out;
}

std::vector<Vec> box_seeds(const Vec& lo, const Vec& hi, const std::array<int, 3>& counts) {
  for (int c : counts)
    if (c < 1) throw DomainError("box counts must be positive");
  auto coord = [&](int axis, int i) {
    if (counts[axis] == 1) return 0.5 * (lo[axis] + hi[axis]);
    return lo[axis] + (hi[axis] - lo[axis]) * i / (counts[axis] - 1);
  };
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(counts[0]) * counts[1] * counts[2]);
  for (int i = 0; i < counts[0]; ++i)
    for (int j = 0; j < counts[1]; ++j)
      for (int k = 0; k < counts[2]; ++k) out.emplace_back(coord(0, i), coord(1, j), coord(2, k));
  return out;
}

std::vector<Vec> seed_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw DomainError("empty seed spec");
  if (parts[0] == "shell" && parts.size() == 3) {
    return fibonacci_shell(parse_number(parts[1], spec), parse_count(parts[2], spec));
  }
  if (parts[0] == "box" && parts.size() == 4) {
    const auto n = split(parts[3], ',');
    if (n.size() != 3) throw DomainError("expected nx,ny,nz in seed spec '" + spec + "'");
    return box_seeds(parse_triple(parts[1], spec), parse_triple(parts[2], spec),
                     {parse_count(n[0], spec), parse_count(n[1], spec), parse_count(n[2], spec)});
  }
  if (parts[0] == "point" && parts.size() == 2) return {parse_triple(parts[1], spec)};
  throw DomainError("unrecognized seed spec '" + spec + "'");
}

}  // namespace emknot
