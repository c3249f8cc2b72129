#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "emknot/knotfield.hpp"

namespace emknot {

enum class FieldSelector { E, B };

std::string to_string(FieldSelector f);
/// Accepts "E" or "B"; throws DomainError otherwise.
FieldSelector parse_field_selector(const std::string& s);

struct TraceRequest {
  const ModeCoefficients* lambda = nullptr;
  FieldSelector field = FieldSelector::B;
  double t = 0.0;
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  double max_arc_length = 50.0;   ///< in units of ell
  double step_tolerance = 1e-9;   ///< local error per step, units of ell
  double closure_tolerance = 1e-3;  ///< units of ell
  double nominal_step = 0.02;     ///< upper bound on the step, units of ell
  double max_turn = 3e-3;         ///< tangent rotation per step, radians
};

/// Throws DomainError when a tolerance is not positive, the seed is not
/// finite or no coefficients are attached.
void validate(const TraceRequest& req);

struct Polyline {
  std::vector<Eigen::Vector3d> points;
  std::vector<double> s;  ///< arc length at each point
  bool closed = false;
  double closure_gap = 0.0;  ///< closest approach to the seed on the last segment when closed
  double arc_length = 0.0;
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  FieldSelector field = FieldSelector::B;
};

class TraceError : public std::runtime_error {
 public:
  enum class Kind { ZeroField, StepUnderflow };
  TraceError(Kind kind, const std::string& what, Polyline partial)
      : std::runtime_error(what), kind_(kind), partial_(std::move(partial)) {}
  Kind kind() const { return kind_; }
  /// Points traced before the failure; the last one is where it stopped.
  const Polyline& partial() const { return partial_; }

 private:
  Kind kind_;
  Polyline partial_;
};

/// Magnitude below which a field counts as zero: 1e-12 sqrt(E / ell^3).
double zero_field_threshold(const ModeCoefficients& lambda);

/// Selected Minkowski field at (t, x).
Eigen::Vector3d field_at(const ModeCoefficients& lambda, const XCoefficients& x, FieldSelector f, double t,
                         const Eigen::Vector3d& pos);

/// Integral curve of field/|field| from the seed, Dormand-Prince 5(4) with
/// error and turning-angle control. Stops at the arc-length limit or on
/// closure: the last segment passes within the closure tolerance of the seed
/// with tangent alignment above 0.999.
Polyline trace(const TraceRequest& req);

struct TraceOutcome {
  Polyline line;
  bool ok = true;
  std::string error;
};

/// One trace per seed, seeds distributed over workers.
std::vector<TraceOutcome> trace_all(const TraceRequest& base, const std::vector<Eigen::Vector3d>& seeds,
                                    int workers = 0);

/// Seed layouts:
///   shell:R:N                       N points on a Fibonacci sphere of radius R
///   box:x0,y0,z0:x1,y1,z1:nx,ny,nz  inclusive lattice, nx*ny*nz points
///   point:x,y,z                     a single seed
/// Throws DomainError on malformed specs.
std::vector<Eigen::Vector3d> seed_grid(const std::string& spec);

std::vector<Eigen::Vector3d> fibonacci_shell(double radius, int count);
std::vector<Eigen::Vector3d> box_seeds(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                                       const std::array<int, 3>& counts);

}  // namespace emknot
