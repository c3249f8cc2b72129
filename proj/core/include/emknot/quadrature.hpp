#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <thread>
#include <utility>
#include <vector>

#include "emknot/geometry.hpp"

namespace emknot {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

struct GridSize {
  int n_chi = 64;
  int n_theta = 32;
  int n_phi = 64;

  GridSize doubled() const { return {2 * n_chi, 2 * n_theta, 2 * n_phi}; }
  bool operator==(const GridSize&) const = default;
};

/// Product rule on S^3 for the measure sin^2(chi) sin(theta) dchi dtheta dphi.
/// Gauss-Legendre in chi and in theta with the Jacobian factors folded into
/// the weights, trapezoid in phi. All nodes are interior in chi and theta.
class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  explicit QuadratureGrid(GridSize size);

  const GridSize& size() const { return size_; }
  std::size_t count() const { return points_.size(); }
  const S3Point& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<S3Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Nominal polynomial degree integrated exactly in each angle.
  int exactness_degree() const;

 private:
  GridSize size_{};
  std::vector<S3Point> points_;
  std::vector<double> weights_;
};

/// Throws DomainError for node counts below 2.
QuadratureGrid s3_quadrature(int n_chi, int n_theta, int n_phi);
inline QuadratureGrid s3_quadrature(GridSize s) { return s3_quadrature(s.n_chi, s.n_theta, s.n_phi); }

/// Worker count: explicit value if > 0, else EMKNOT_WORKERS, else 1.
int resolve_workers(int requested);

/// Pairwise sum of a contiguous range.
double pairwise_sum(const double* v, std::size_t n);

namespace detail {
inline constexpr std::size_t kBlock = 512;
}

/// Integrates `n` real functions over the grid in one pass. `f(point, out)`
/// writes n values to `out`. Nodes are split into fixed blocks whose partial
/// sums are reduced pairwise, so the result does not depend on the worker count.
template <class F>
std::vector<double> integrate_n(const QuadratureGrid& grid, std::size_t n_out, F&& f, int workers = 0) {
  using detail::kBlock;
  const std::size_t n = grid.count();
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(n_out * nblocks, 0.0);

  auto run = [&](std::size_t b0, std::size_t b1) {
    std::vector<double> buf(n_out * kBlock);
    std::vector<double> v(n_out);
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t i0 = b * kBlock;
      const std::size_t i1 = std::min(n, i0 + kBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        f(grid.point(i), v.data());
        const double w = grid.weight(i);
        for (std::size_t k = 0; k < n_out; ++k) buf[k * kBlock + (i - i0)] = w * v[k];
      }
      for (std::size_t k = 0; k < n_out; ++k) partial[k * nblocks + b] = pairwise_sum(&buf[k * kBlock], i1 - i0);
    }
  };

  const int nw = std::max(1, std::min<int>(resolve_workers(workers), static_cast<int>(nblocks)));
  if (nw == 1) {
    run(0, nblocks);
  } else {
    std::vector<std::thread> threads;
    const std::size_t per = (nblocks + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const std::size_t b0 = w * per;
      const std::size_t b1 = std::min(nblocks, b0 + per);
      if (b0 < b1) threads.emplace_back(run, b0, b1);
    }
    for (auto& t : threads) t.join();
  }

  std::vector<double> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) out[k] = pairwise_sum(partial.data() + k * nblocks, nblocks);
  return out;
}

/// Fixed-size form of integrate_n; `f(point)` returns std::array<double, N>.
template <std::size_t N, class F>
std::array<double, N> integrate(const QuadratureGrid& grid, F&& f, int workers = 0) {
  const std::vector<double> v = integrate_n(
      grid, N,
      [&](const S3Point& p, double* out) {
        const std::array<double, N> r = f(p);
        std::copy(r.begin(), r.end(), out);
      },
      workers);
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

/// Integrates a single complex function.
template <class F>
cplx integrate_complex(const QuadratureGrid& grid, F&& f, int workers = 0) {
  const auto r = integrate<2>(
      grid,
      [&](const S3Point& p) {
        const cplx v = f(p);
        return std::array<double, 2>{v.real(), v.imag()};
      },
      workers);
  return {r[0], r[1]};
}

}  // namespace emknot
