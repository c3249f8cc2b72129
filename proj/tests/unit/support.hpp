#pragma once

#include <Eigen/Dense>
#include <random>

#include "emknot/geometry.hpp"
#include "emknot/knotfield.hpp"

namespace emknot::test {

inline S3Point random_s3(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d w(g(rng), g(rng), g(rng), g(rng));
  return S3Point::from_vector(w.normalized());
}

/// Event with |t|, |x_i| up to `extent` ell.
inline MinkowskiEvent random_event(std::mt19937_64& rng, double ell, double extent = 2.0) {
  std::uniform_real_distribution<double> u(-extent * ell, extent * ell);
  return {u(rng), u(rng), u(rng), u(rng)};
}

inline ModeCoefficients single_mode(HalfInteger j, HalfInteger m, HalfInteger n, double ell, cplx v = 1.0) {
  ModeCoefficients l(j, ell);
  l.set(m, n, v);
  return l;
}

inline HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

}  // namespace emknot::test
