#pragma once

#include <complex>
#include <vector>

namespace photon {

struct QuadratureRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Gauss-Legendre of the given order on each of `panels` equal panels of [a, b].
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int order);

/// n equally spaced nodes on [0, 2 pi) with weight 2 pi / n.
QuadratureRule periodic_trapezoid(int n);

/// Pairwise (tree) summation: deterministic for a fixed input order.
template <class T>
T pairwise_sum(const T* v, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace photon
