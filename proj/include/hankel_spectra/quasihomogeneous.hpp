#ifndef HANKEL_SPECTRA_QUASIHOMOGENEOUS_HPP
#define HANKEL_SPECTRA_QUASIHOMOGENEOUS_HPP

// Spectra of H*_psi H_psi for quasi-homogeneous symbols psi(z) = f(|z|) e^{i k.theta}
// on the polydisc. Every monomial z^alpha is an eigenvector:
//
//   alpha + k not in N_0^n:  lambda = ||z^alpha psi||^2 / ||z^alpha||^2
//   alpha + k in N_0^n:      lambda = ||z^alpha psi||^2 / ||z^alpha||^2
//                                     - |I(f, 2 alpha + k)|^2 / (||z^alpha||^2 ||z^{alpha+k}||^2)
//
// with I(f, e) = int_{D^n} |w|^e f(|w|) dV(w) = prod_k 2 pi int_0^1 r^{e_k + 1} f_k(r) dr.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"
#include "exact.hpp"
#include "multi_index.hpp"
#include "quadrature.hpp"

namespace hankel_spectra {

/// Polynomial in r with rational coefficients, ascending powers.
using RationalPoly = std::vector<ExactScalar>;
/// Real profile on [0, 1] known only through evaluation.
using SampledProfile = std::function<double(double)>;
using RadialFactor = std::variant<RationalPoly, SampledProfile>;
/// Non-separable profile f(r_1, ..., r_n).
using JointProfile = std::function<double(std::span<const double>)>;

inline RationalPoly poly_multiply(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline double poly_evaluate(const RationalPoly& p, double r) {
  double s = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) s = s * r + p[i].get_d();
  return s;
}

/// r^power as a rational polynomial.
inline RationalPoly radial_power(int power) {
  RationalPoly p(power + 1);
  p[power] = 1;
  return p;
}

class RadialProfile {
 public:
  RadialProfile() = default;

  static RadialProfile separable(std::vector<RadialFactor> factors) {
    if (factors.empty()) throw std::invalid_argument("radial profile needs at least one factor");
    RadialProfile p;
    p.dim_ = factors.size();
    p.factors_ = std::move(factors);
    return p;
  }
  static RadialProfile joint(std::size_t dim, JointProfile f) {
    if (dim == 0) throw std::invalid_argument("radial profile needs dim >= 1");
    RadialProfile p;
    p.dim_ = dim;
    p.joint_ = std::move(f);
    return p;
  }

  std::size_t dim() const { return dim_; }
  bool is_separable() const { return !joint_; }
  const std::vector<RadialFactor>& factors() const { return factors_; }
  const JointProfile& joint_profile() const { return joint_; }

  bool all_polynomial() const {
    return is_separable() && std::all_of(factors_.begin(), factors_.end(), [](const RadialFactor& f) {
             return std::holds_alternative<RationalPoly>(f);
           });
  }

  /// f^2: coefficient convolution for polynomial factors, pointwise otherwise.
  RadialProfile squared() const {
    if (!is_separable()) {
      JointProfile f = joint_;
      return joint(dim_, [f](std::span<const double> r) {
        double v = f(r);
        return v * v;
      });
    }
    std::vector<RadialFactor> sq;
    sq.reserve(factors_.size());
    for (const auto& factor : factors_) {
      if (const auto* poly = std::get_if<RationalPoly>(&factor)) {
        sq.emplace_back(poly_multiply(*poly, *poly));
      } else {
        SampledProfile f = std::get<SampledProfile>(factor);
        sq.emplace_back(SampledProfile([f](double r) {
          double v = f(r);
          return v * v;
        }));
      }
    }
    return separable(std::move(sq));
  }

 private:
  std::size_t dim_ = 0;
  std::vector<RadialFactor> factors_;
  JointProfile joint_;
};

struct QuasiHomogeneousSymbol {
  RadialProfile profile;
  Winding winding;

  QuasiHomogeneousSymbol() = default;
  QuasiHomogeneousSymbol(RadialProfile f, Winding k) : profile(std::move(f)), winding(std::move(k)) {
    require_same_dim(profile.dim(), winding.dim(), "profile vs winding");
  }
  std::size_t dim() const { return winding.dim(); }

  /// z^n zbar^m = prod_k r_k^{n_k + m_k} e^{i (n - m).theta}.
  static QuasiHomogeneousSymbol from_monomial(const MonomialSymbol& sym) {
    std::vector<RadialFactor> factors;
    Winding k(sym.dim());
    for (std::size_t i = 0; i < sym.dim(); ++i) {
      factors.emplace_back(radial_power(sym.holo[i] + sym.antiholo[i]));
      k[i] = sym.holo[i] - sym.antiholo[i];
    }
    return {RadialProfile::separable(std::move(factors)), std::move(k)};
  }
};

struct QuadratureConfig {
  std::size_t nodes = 64;   // Gauss–Legendre nodes per radial factor, in r
  bool force_float = false;  // skip the exact path even for rational polynomial profiles
  std::size_t max_tensor_dim = 3;
};

/// Value of a radial integral; when exact, value = pi_coeff * pi^pi_power.
struct RadialIntegral {
  double value = 0.0;
  std::optional<ExactScalar> pi_coeff;
  std::size_t pi_power = 0;
};

/// ||z^beta||^2 = pi^n / prod_k (beta_k + 1).
struct MonomialNorm {
  MultiIndex beta;
  ExactScalar pi_coeff;

  double value() const { return pi_coeff.get_d() * std::pow(std::numbers::pi, double(beta.dim())); }
};

inline MonomialNorm monomial_norm_sq(const MultiIndex& beta) {
  ExactScalar c(1);
  for (int e : beta.entries()) c /= (e + 1);
  c.canonicalize();
  return {beta, c};
}

namespace detail {

inline void check_bounded(const SampledProfile& f, const GaussLegendre& rule) {
  auto probe = [&](double r) {
    double v = f(r);
    if (!std::isfinite(v)) throw std::domain_error("radial profile is unbounded or non-finite on [0,1]");
  };
  probe(0.0);
  probe(1.0);
  for (double r : rule.nodes) probe(r);
}

inline void check_exponent(int e, const RadialFactor& factor) {
  if (const auto* poly = std::get_if<RationalPoly>(&factor)) {
    for (std::size_t j = 0; j < poly->size(); ++j)
      if (sgn((*poly)[j]) != 0 && e + int(j) + 2 <= 0)
        throw std::domain_error("radial integrand r^" + std::to_string(e + 1 + int(j)) + " is not integrable");
  } else if (e < -1) {
    throw std::domain_error("radial exponent " + std::to_string(e) + " is not integrable");
  }
}

}  // namespace detail

/// prod_k 2 pi int_0^1 r^{e_k + 1} f_k(r) dr; exact for rational polynomial factors.
inline RadialIntegral radial_integral(const RadialProfile& profile, const Winding& exponent,
                                      const QuadratureConfig& cfg = {}) {
  require_same_dim(profile.dim(), exponent.dim(), "profile vs exponent");
  const std::size_t dim = profile.dim();
  const double two_pi = 2.0 * std::numbers::pi;
  GaussLegendre rule(cfg.nodes);

  if (!profile.is_separable()) {
    if (dim > cfg.max_tensor_dim)
      throw std::invalid_argument("non-separable profiles are supported only for dim <= " +
                                  std::to_string(cfg.max_tensor_dim));
    for (std::size_t k = 0; k < dim; ++k)
      if (exponent[k] < -1) throw std::domain_error("radial exponent is not integrable");
    const auto& f = profile.joint_profile();
    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> r(dim);
    double sum = 0.0;
    for (;;) {
      double w = 1.0;
      for (std::size_t k = 0; k < dim; ++k) {
        r[k] = rule.nodes[idx[k]];
        w *= rule.weights[idx[k]] * std::pow(r[k], exponent[k] + 1);
      }
      double v = f(r);
      if (!std::isfinite(v)) throw std::domain_error("radial profile is unbounded or non-finite on [0,1]");
      sum += w * v;
      std::size_t k = 0;
      while (k < dim && idx[k] + 1 == rule.nodes.size()) idx[k++] = 0;
      if (k == dim) break;
      ++idx[k];
    }
    return {sum * std::pow(two_pi, double(dim)), std::nullopt, dim};
  }

  for (std::size_t k = 0; k < dim; ++k) detail::check_exponent(exponent[k], profile.factors()[k]);

  if (profile.all_polynomial() && !cfg.force_float) {
    ExactScalar coeff(1);
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& poly = std::get<RationalPoly>(profile.factors()[k]);
      ExactScalar s(0);
      for (std::size_t j = 0; j < poly.size(); ++j)
        if (sgn(poly[j]) != 0) s += poly[j] / ExactScalar(exponent[k] + int(j) + 2);
      coeff *= 2 * s;
    }
    coeff.canonicalize();
    return {coeff.get_d() * std::pow(std::numbers::pi, double(dim)), coeff, dim};
  }

  double value = 1.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& factor = profile.factors()[k];
    const int e = exponent[k];
    double integral;
    if (const auto* poly = std::get_if<RationalPoly>(&factor)) {
      integral = rule.integrate([&](double r) { return std::pow(r, e + 1) * poly_evaluate(*poly, r); });
    } else {
      const auto& f = std::get<SampledProfile>(factor);
      detail::check_bounded(f, rule);
      integral = rule.integrate([&](double r) { return std::pow(r, e + 1) * f(r); });
    }
    value *= two_pi * integral;
  }
  return {value, std::nullopt, dim};
}

enum class QhBranch { KernelBranch, ProjectionBranch };

inline const char* to_string(QhBranch b) {
  return b == QhBranch::KernelBranch ? "KernelBranch" : "ProjectionBranch";
}

struct QhEigenvalue {
  MultiIndex alpha;
  double value = 0.0;
  std::optional<ExactScalar> exact;
  QhBranch branch = QhBranch::KernelBranch;
};

/// Eigenvalue of H*_psi H_psi on z^alpha.
inline QhEigenvalue qh_eigenvalue(const QuasiHomogeneousSymbol& sym, const MultiIndex& alpha,
                                  const QuadratureConfig& cfg = {}) {
  require_same_dim(sym.dim(), alpha.dim(), "symbol vs alpha");
  const std::size_t dim = sym.dim();

  Winding twice_alpha(dim), shifted_exp(dim);
  bool in_lattice = true;
  std::vector<int> target(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    twice_alpha[k] = 2 * alpha[k];
    shifted_exp[k] = 2 * alpha[k] + sym.winding[k];
    target[k] = alpha[k] + sym.winding[k];
    if (target[k] < 0) in_lattice = false;
  }

  QhEigenvalue out;
  out.alpha = alpha;
  out.branch = in_lattice ? QhBranch::ProjectionBranch : QhBranch::KernelBranch;

  const MonomialNorm norm_alpha = monomial_norm_sq(alpha);
  const RadialIntegral moment = radial_integral(sym.profile.squared(), twice_alpha, cfg);

  if (moment.pi_coeff) {
    ExactScalar first = *moment.pi_coeff / norm_alpha.pi_coeff;
    ExactScalar value = first;
    if (in_lattice) {
      const MonomialNorm norm_target = monomial_norm_sq(MultiIndex(target));
      const RadialIntegral overlap = radial_integral(sym.profile, shifted_exp, cfg);
      ExactScalar second = (*overlap.pi_coeff * *overlap.pi_coeff) / (norm_alpha.pi_coeff * norm_target.pi_coeff);
      if (second > first) throw std::logic_error("Cauchy-Schwarz bound violated in exact eigenvalue");
      value -= second;
    }
    value.canonicalize();
    out.value = value.get_d();
    out.exact = std::move(value);
    return out;
  }

  const double first = moment.value / norm_alpha.value();
  double value = first;
  if (in_lattice) {
    const MonomialNorm norm_target = monomial_norm_sq(MultiIndex(target));
    const RadialIntegral overlap = radial_integral(sym.profile, shifted_exp, cfg);
    const double second = overlap.value * overlap.value / (norm_alpha.value() * norm_target.value());
    if (second > first * (1.0 + 1e-12) + 1e-300)
      throw std::logic_error("Cauchy-Schwarz bound violated in quadrature eigenvalue");
    value -= second;
  }
  out.value = value;
  return out;
}

struct QhSpectrumEntry {
  QhEigenvalue eigenvalue;
  bool in_cluster = false;  // within cluster_tolerance of a neighbour: numerical limit point
};

struct QhSpectrum {
  std::vector<QhSpectrumEntry> entries;  // ascending by value, ties by alpha
  int alpha_cap = 0;
  double cluster_tolerance = 1e-9;
  bool contains_zero = false;

  /// Distinct values, merging neighbours closer than the cluster tolerance.
  std::vector<double> distinct_values() const {
    std::vector<double> out;
    for (const auto& e : entries)
      if (out.empty() || e.eigenvalue.value - out.back() >= cluster_tolerance) out.push_back(e.eigenvalue.value);
    return out;
  }
};

/// All eigenvalues for alpha <= alpha_cap componentwise, sorted, with clusters marked.
inline QhSpectrum qh_spectrum(const QuasiHomogeneousSymbol& sym, int alpha_cap, const QuadratureConfig& cfg = {},
                              double cluster_tolerance = 1e-9) {
  if (alpha_cap < 0) throw std::invalid_argument("alpha_cap must be >= 0");
  QhSpectrum out;
  out.alpha_cap = alpha_cap;
  out.cluster_tolerance = cluster_tolerance;
  for (const MultiIndex& alpha : graded_lex_box(sym.dim(), alpha_cap))
    out.entries.push_back({qh_eigenvalue(sym, alpha, cfg), false});
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const QhSpectrumEntry& a, const QhSpectrumEntry& b) {
    if (a.eigenvalue.value != b.eigenvalue.value) return a.eigenvalue.value < b.eigenvalue.value;
    return a.eigenvalue.alpha < b.eigenvalue.alpha;
  });
  for (std::size_t i = 1; i < out.entries.size(); ++i) {
    if (out.entries[i].eigenvalue.value - out.entries[i - 1].eigenvalue.value < cluster_tolerance) {
      out.entries[i].in_cluster = true;
      out.entries[i - 1].in_cluster = true;
    }
  }
  for (const auto& e : out.entries)
    if (std::abs(e.eigenvalue.value) < cluster_tolerance) out.contains_zero = true;
  return out;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_QUASIHOMOGENEOUS_HPP
