#ifndef HANKEL_SPECTRA_HERMITIAN_EIGEN_HPP
#define HANKEL_SPECTRA_HERMITIAN_EIGEN_HPP

// Cyclic Jacobi for dense complex Hermitian matrices (row-major storage).
//
// Each rotation first removes the phase of a_pq with a diagonal unitary, then
// applies the classical real rotation:
//   theta = (a_qq - a_pp) / (2|a_pq|),  t = sgn(theta) / (|theta| + sqrt(theta^2 + 1)),
//   c = 1 / sqrt(t^2 + 1),  s = t c.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <stdexcept>
#include <vector>

namespace hankel_spectra {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JacobiOptions {
  int max_sweeps = 50;
  double relative_tolerance = 1e-12;  // stop when off(A) < tol * ||A||_F
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  double off_norm = 0.0;
};

namespace detail {

inline double off_diagonal_norm(const std::vector<std::complex<double>>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

inline double frobenius_norm(const std::vector<std::complex<double>>& a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return std::sqrt(s);
}

}  // namespace detail

inline JacobiResult jacobi_eigenvalues(std::vector<std::complex<double>> a, std::size_t n,
                                       const JacobiOptions& opts = {}) {
  if (a.size() != n * n) throw std::invalid_argument("matrix storage does not match size");
  JacobiResult result;
  const double scale = detail::frobenius_norm(a);
  const double target = opts.relative_tolerance * scale;

  auto at = [&](std::size_t i, std::size_t j) -> std::complex<double>& { return a[i * n + j]; };

  for (std::size_t i = 0; i < n; ++i) at(i, i) = at(i, i).real();

  double off = detail::off_diagonal_norm(a, n);
  while (off > target && scale > 0.0) {
    if (result.sweeps == opts.max_sweeps)
      throw ConvergenceError("Jacobi eigensolver did not converge in " + std::to_string(opts.max_sweeps) + " sweeps");
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> apq = at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Skip rotations that cannot change the diagonal at working precision.
        const double app = at(p, p).real(), aqq = at(q, q).real();
        if (result.sweeps > 4 && r < 1e-3 * std::numeric_limits<double>::epsilon() * (std::abs(app) + std::abs(aqq))) {
          at(p, q) = at(q, p) = 0.0;
          continue;
        }
        const std::complex<double> u = apq / r;  // a_pq = r u
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const std::complex<double> ub = std::conj(u);

        // A <- A G with G_pp = c, G_pq = s, G_qp = -s conj(u), G_qq = c conj(u).
        for (std::size_t k = 0; k < n; ++k) {
          const std::complex<double> akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * ub * akq;
          at(k, q) = s * akp + c * ub * akq;
        }
        // A <- G^H A.
        for (std::size_t k = 0; k < n; ++k) {
          const std::complex<double> apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * u * aqk;
          at(q, k) = s * apk + c * u * aqk;
        }
        at(p, p) = app - t * r;
        at(q, q) = aqq + t * r;
        at(p, q) = at(q, p) = 0.0;
      }
    }
    off = detail::off_diagonal_norm(a, n);
  }
  result.off_norm = off;
  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = at(i, i).real();
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_HERMITIAN_EIGEN_HPP
