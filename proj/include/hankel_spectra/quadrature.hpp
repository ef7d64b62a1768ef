#ifndef HANKEL_SPECTRA_QUADRATURE_HPP
#define HANKEL_SPECTRA_QUADRATURE_HPP

#include <gsl/gsl_integration.h>

#include <memory>
#include <stdexcept>
#include <vector>

namespace hankel_spectra {

/// Gauss–Legendre rule mapped to [a, b]; exact for polynomials of degree <= 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  GaussLegendre(std::size_t n, double a = 0.0, double b = 1.0) {
    if (n == 0) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
    if (!table) throw std::runtime_error("failed to allocate Gauss-Legendre table");
    nodes.resize(n);
    weights.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      gsl_integration_glfixed_point(a, b, i, &nodes[i], &weights[i], table.get());
  }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_QUADRATURE_HPP
