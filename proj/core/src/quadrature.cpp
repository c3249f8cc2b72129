#include "emknot/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "emknot/errors.hpp"

namespace emknot {

using std::numbers::pi;

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[n - 1 - i] = x;
    g.nodes[i] = -x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  return g;
}

QuadratureGrid::QuadratureGrid(GridSize size) : size_(size) {
  if (size.n_chi < 2 || size.n_theta < 2 || size.n_phi < 2) {
    throw DomainError("quadrature node counts must be at least 2");
  }
  const GaussLegendre gc = gauss_legendre(size.n_chi);
  const GaussLegendre gt = gauss_legendre(size.n_theta);
  const double hphi = 2.0 * pi / size.n_phi;

  const std::size_t total =
      static_cast<std::size_t>(size.n_chi) * static_cast<std::size_t>(size.n_theta) * size.n_phi;
  points_.reserve(total);
  weights_.reserve(total);
  for (int i = 0; i < size.n_chi; ++i) {
    const double chi = 0.5 * pi * (gc.nodes[i] + 1.0);
    const double sc = std::sin(chi);
    const double wc = 0.5 * pi * gc.weights[i] * sc * sc;
    for (int j = 0; j < size.n_theta; ++j) {
      const double th = 0.5 * pi * (gt.nodes[j] + 1.0);
      const double wt = 0.5 * pi * gt.weights[j] * std::sin(th);
      for (int k = 0; k < size.n_phi; ++k) {
        points_.push_back(S3Point::from_angles(chi, th, k * hphi));
        weights_.push_back(wc * wt * hphi);
      }
    }
  }
}

int QuadratureGrid::exactness_degree() const {
  return std::min({2 * size_.n_chi - 1, 2 * size_.n_theta - 1, size_.n_phi - 1});
}

QuadratureGrid s3_quadrature(int n_chi, int n_theta, int n_phi) { return QuadratureGrid({n_chi, n_theta, n_phi}); }

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("EMKNOT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1024) return static_cast<int>(v);
  }
  return 1;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace emknot
