#ifndef HANKEL_SPECTRA_GALERKIN_HPP
#define HANKEL_SPECTRA_GALERKIN_HPP

// Finite-section compression of H*_psi H_psi onto span{z^alpha : max alpha_k <= N}
// for polynomial symbols, using H*_u H_v = P M_{conj u} (I - P) M_v.
//
// Exact bookkeeping happens in the monomial basis with every inner product
// divided by pi^n:
//   <z^a zbar^b, z^c zbar^d> / pi^n = prod_k [a_k + d_k == b_k + c_k] / (a_k + d_k + 1),
//   w_alpha = pi^n / ||z^alpha||^2 = prod_k (alpha_k + 1).
// The orthonormal-basis matrix is M_{alpha beta} = G_{alpha beta} sqrt(w_alpha w_beta), so
// its diagonal w_alpha G_{alpha alpha} is rational while off-diagonal entries in
// general are not.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact.hpp"
#include "hermitian_eigen.hpp"
#include "multi_index.hpp"
#include "parallel.hpp"
#include "poly_symbol.hpp"

namespace hankel_spectra {

inline constexpr std::size_t kMaxBasisSize = 20000;

class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Retained basis {z^alpha : max alpha_k <= degree_cap} in graded lexicographic order.
class BasisTruncation {
 public:
  BasisTruncation() = default;
  BasisTruncation(std::size_t dim, int degree_cap) : dim_(dim), degree_cap_(degree_cap) {
    if (dim == 0) throw std::invalid_argument("basis dimension must be >= 1");
    if (degree_cap < 0) throw std::invalid_argument("degree cap must be >= 0");
    double size = std::pow(double(degree_cap + 1), double(dim));
    if (size > double(kMaxBasisSize))
      throw SizeGuardError("basis size " + std::to_string(static_cast<long long>(size)) + " exceeds " +
                           std::to_string(kMaxBasisSize));
    ordering_ = graded_lex_box(dim, degree_cap);
    for (std::size_t i = 0; i < ordering_.size(); ++i) index_.emplace(ordering_[i], i);
  }

  std::size_t dim() const { return dim_; }
  int degree_cap() const { return degree_cap_; }
  std::size_t size() const { return ordering_.size(); }
  const std::vector<MultiIndex>& ordering() const { return ordering_; }
  const MultiIndex& operator[](std::size_t i) const { return ordering_[i]; }

  std::optional<std::size_t> index_of(const MultiIndex& alpha) const {
    auto it = index_.find(alpha);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t dim_ = 0;
  int degree_cap_ = 0;
  std::vector<MultiIndex> ordering_;
  std::map<MultiIndex, std::size_t> index_;
};

/// <z^a zbar^b, z^c zbar^d> / pi^n over D^n; zero unless a + d == b + c.
inline ExactScalar monomial_inner(std::span<const int> a, std::span<const int> b, std::span<const int> c,
                                  std::span<const int> d) {
  ExactScalar out(1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] + d[k] != b[k] + c[k]) return ExactScalar(0);
    out /= (a[k] + d[k] + 1);
  }
  return out;
}

/// w_beta = pi^n / ||z^beta||^2.
inline long monomial_weight(const MultiIndex& beta) {
  long w = 1;
  for (int e : beta.entries()) w *= (e + 1);
  return w;
}

/// Smallest inner cap that makes the projection sum exact for basis indices <= max_index.
template <class Coeff>
int required_inner_cap(const PolySymbol<Coeff>& sym, int max_index) {
  int deg = 0;
  for (int d : sym.coordinate_degree()) deg = std::max(deg, d);
  return max_index + deg;
}

namespace detail {

inline std::vector<int> shifted(const MultiIndex& a, const MultiIndex& add) {
  std::vector<int> out(a.dim());
  for (std::size_t k = 0; k < a.dim(); ++k) out[k] = a[k] + add[k];
  return out;
}

/// Coefficients (w_gamma <psi z^alpha, z^gamma>/pi^n) of P(psi z^alpha) on z^gamma,
/// restricted to max gamma_k <= inner_cap.
template <class Coeff>
std::map<MultiIndex, Coeff> projection_coefficients(const PolySymbol<Coeff>& sym, const MultiIndex& alpha,
                                                    int inner_cap) {
  using T = ScalarTraits<Coeff>;
  std::map<MultiIndex, Coeff> out;
  const std::size_t dim = alpha.dim();
  for (const auto& [key, c] : sym.terms()) {
    std::vector<int> g(dim);
    bool in_box = true;
    for (std::size_t k = 0; k < dim; ++k) {
      g[k] = alpha[k] + key.holo[k] - key.antiholo[k];
      if (g[k] < 0 || g[k] > inner_cap) in_box = false;
    }
    if (!in_box) continue;
    MultiIndex gamma(g);
    std::vector<int> a = shifted(alpha, key.holo);
    ExactScalar ip = monomial_inner(a, key.antiholo.entries(), gamma.entries(), std::vector<int>(dim, 0));
    ExactScalar weighted = ip * monomial_weight(gamma);
    Coeff term = c;
    term *= T::from_rational(weighted);
    auto [it, inserted] = out.try_emplace(gamma, term);
    if (!inserted) it->second += term;
  }
  return out;
}

template <class Coeff>
void check_inner_cap(const PolySymbol<Coeff>& sym, const MultiIndex& alpha, const MultiIndex& beta, int inner_cap) {
  auto deg = sym.coordinate_degree();
  for (std::size_t k = 0; k < alpha.dim(); ++k)
    if (std::max(alpha[k], beta[k]) + deg[k] > inner_cap)
      throw std::invalid_argument("inner_cap " + std::to_string(inner_cap) +
                                  " too small for exact projection (need basis index + symbol degree)");
}

}  // namespace detail

/// <H_psi z^alpha, H_psi z^beta> / pi^n in the monomial basis:
/// <psi z^alpha, psi z^beta> minus the projection sum over gamma <= inner_cap.
template <class Coeff>
Coeff hankel_gram_monomial(const PolySymbol<Coeff>& sym, const MultiIndex& alpha, const MultiIndex& beta,
                           int inner_cap) {
  using T = ScalarTraits<Coeff>;
  require_same_dim(sym.dim(), alpha.dim(), "symbol vs alpha");
  require_same_dim(sym.dim(), beta.dim(), "symbol vs beta");
  detail::check_inner_cap(sym, alpha, beta, inner_cap);

  Coeff direct = T::zero();
  for (const auto& [ka, ca] : sym.terms()) {
    std::vector<int> a = detail::shifted(alpha, ka.holo);
    for (const auto& [kb, cb] : sym.terms()) {
      std::vector<int> c = detail::shifted(beta, kb.holo);
      ExactScalar ip = monomial_inner(a, ka.antiholo.entries(), c, kb.antiholo.entries());
      if (sgn(ip) == 0) continue;
      Coeff term = ca;
      term *= T::conjugate(cb);
      term *= T::from_rational(ip);
      direct += term;
    }
  }

  auto pa = detail::projection_coefficients(sym, alpha, inner_cap);
  auto pb = detail::projection_coefficients(sym, beta, inner_cap);
  Coeff projected = T::zero();
  for (const auto& [gamma, ag] : pa) {
    auto it = pb.find(gamma);
    if (it == pb.end()) continue;
    Coeff term = ag;
    term *= T::conjugate(it->second);
    term *= T::from_rational(ExactScalar(1, monomial_weight(gamma)));
    projected += term;
  }
  direct -= projected;
  return direct;
}

/// <H_psi e_alpha, H_psi e_beta> in the orthonormal basis e_alpha = z^alpha / ||z^alpha||.
template <class Coeff>
std::complex<double> hankel_gram_entry(const PolySymbol<Coeff>& sym, const MultiIndex& alpha,
                                       const MultiIndex& beta, int inner_cap) {
  Coeff g = hankel_gram_monomial(sym, alpha, beta, inner_cap);
  double scale = std::sqrt(double(monomial_weight(alpha)) * double(monomial_weight(beta)));
  return ScalarTraits<Coeff>::to_complex(g) * scale;
}

/// <u z^alpha, z^beta> / pi^n: monomial-basis entry of the Toeplitz operator T_u.
template <class Coeff>
Coeff toeplitz_monomial(const PolySymbol<Coeff>& u, const MultiIndex& alpha, const MultiIndex& beta) {
  using T = ScalarTraits<Coeff>;
  Coeff out = T::zero();
  std::vector<int> zeros(alpha.dim(), 0);
  for (const auto& [key, c] : u.terms()) {
    std::vector<int> a = detail::shifted(alpha, key.holo);
    ExactScalar ip = monomial_inner(a, key.antiholo.entries(), beta.entries(), zeros);
    if (sgn(ip) == 0) continue;
    Coeff term = c;
    term *= T::from_rational(ip);
    out += term;
  }
  return out;
}

enum class Exactness { ExactRational, Float };

inline const char* to_string(Exactness e) { return e == Exactness::ExactRational ? "rational" : "float"; }

/// Dense Galerkin matrix of H*_psi H_psi. Row-major: entry (i, j) = <A e_j, e_i>.
struct CompressionMatrix {
  BasisTruncation truncation;
  Exactness exactness = Exactness::Float;
  std::uint64_t symbol_hash = 0;
  int inner_cap = 0;
  std::vector<std::complex<double>> entries;  // orthonormal basis
  std::vector<ComplexRational> exact_gram;    // monomial basis / pi^n; ExactRational only
  std::vector<long> weights;                  // w_alpha per basis element

  std::size_t size() const { return truncation.size(); }
  const std::complex<double>& at(std::size_t i, std::size_t j) const { return entries[i * size() + j]; }
  const ComplexRational& gram_at(std::size_t i, std::size_t j) const { return exact_gram.at(i * size() + j); }

  /// Exact diagonal entry of the orthonormal matrix, w_alpha G_{alpha alpha}.
  ExactScalar exact_diagonal(std::size_t i) const {
    const ComplexRational& g = gram_at(i, i);
    if (!g.is_real()) throw std::logic_error("non-real diagonal in Hermitian gram");
    ExactScalar out = g.re * weights[i];
    out.canonicalize();
    return out;
  }

  bool exactly_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (i != j && !gram_at(i, j).is_zero()) return false;
    return true;
  }
  bool exactly_hermitian() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i; j < size(); ++j)
        if (gram_at(i, j) != conj(gram_at(j, i))) return false;
    return true;
  }
  double hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i; j < size(); ++j) worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst;
  }
};

/// Assembles the compression with inner_cap = N + max coordinate degree of psi.
/// Only pairs (alpha, beta) with beta = alpha + k_t - k_s for windings of two terms
/// can be non-zero; those are evaluated with hankel_gram_monomial, both triangles
/// independently.
template <class Coeff>
CompressionMatrix assemble(const PolySymbol<Coeff>& sym, const BasisTruncation& trunc) {
  using T = ScalarTraits<Coeff>;
  require_same_dim(trunc.dim(), sym.dim(), "truncation vs symbol");
  const std::size_t n = trunc.size();

  CompressionMatrix out;
  out.truncation = trunc;
  out.exactness = T::exact ? Exactness::ExactRational : Exactness::Float;
  out.symbol_hash = symbol_hash(sym);
  out.inner_cap = required_inner_cap(sym, trunc.degree_cap());
  out.entries.assign(n * n, {});
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.weights[i] = monomial_weight(trunc[i]);
  std::vector<Coeff> gram(n * n, T::zero());

  std::set<std::vector<int>> shifts;
  for (const auto& [kt, ct] : sym.terms())
    for (const auto& [ks, cs] : sym.terms()) {
      std::vector<int> d(sym.dim());
      for (std::size_t k = 0; k < sym.dim(); ++k)
        d[k] = (kt.holo[k] - kt.antiholo[k]) - (ks.holo[k] - ks.antiholo[k]);
      shifts.insert(d);
    }

  parallel_for(n, [&](std::size_t i) {
    const MultiIndex& row = trunc[i];
    for (const auto& d : shifts) {
      std::vector<int> col(row.dim());
      bool ok = true;
      for (std::size_t k = 0; k < row.dim(); ++k) {
        col[k] = row[k] + d[k];
        if (col[k] < 0 || col[k] > trunc.degree_cap()) ok = false;
      }
      if (!ok) continue;
      std::size_t j = *trunc.index_of(MultiIndex(col));
      // (i, j) = <A e_j, e_i> = <H e_j, H e_i>
      gram[i * n + j] = hankel_gram_monomial(sym, trunc[j], row, out.inner_cap);
    }
  });

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Coeff& g = gram[i * n + j];
      if (T::is_zero(g)) continue;
      out.entries[i * n + j] =
          T::to_complex(g) * std::sqrt(double(out.weights[i]) * double(out.weights[j]));
    }
  if constexpr (T::exact) out.exact_gram = std::move(gram);
  return out;
}

/// Second assembly route, T_{|psi|^2} - T_{conj psi} T_psi, with the two Toeplitz
/// compressions built separately over the inner box {gamma : max gamma_k <= inner_cap}.
/// Returns the monomial-basis gram (/ pi^n), row-major as in CompressionMatrix.
template <class Coeff>
std::vector<Coeff> assemble_via_toeplitz(const PolySymbol<Coeff>& sym, const BasisTruncation& trunc,
                                         int inner_cap) {
  using T = ScalarTraits<Coeff>;
  require_same_dim(trunc.dim(), sym.dim(), "truncation vs symbol");
  if (inner_cap < required_inner_cap(sym, trunc.degree_cap()))
    throw std::invalid_argument("inner_cap too small for exact projection");
  const std::size_t n = trunc.size();
  const PolySymbol<Coeff> sym_bar = sym.conjugate();
  const PolySymbol<Coeff> modulus_sq = sym_bar * sym;
  const std::vector<MultiIndex> inner = graded_lex_box(sym.dim(), inner_cap);
  const std::size_t m = inner.size();

  // t_psi[g * n + a] = <psi z^a, z^g>,  t_bar[b * m + g] = <conj(psi) z^g, z^b>.
  std::vector<Coeff> t_psi(m * n), t_bar(n * m);
  parallel_for(m, [&](std::size_t g) {
    for (std::size_t a = 0; a < n; ++a) {
      t_psi[g * n + a] = toeplitz_monomial(sym, trunc[a], inner[g]);
      t_bar[a * m + g] = toeplitz_monomial(sym_bar, inner[g], trunc[a]);
    }
  });

  std::vector<Coeff> out(n * n, T::zero());
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      // (i, j) = <H*H z^{a_j}, z^{a_i}>
      Coeff v = toeplitz_monomial(modulus_sq, trunc[j], trunc[i]);
      for (std::size_t g = 0; g < m; ++g) {
        const Coeff& left = t_psi[g * n + j];
        if (T::is_zero(left)) continue;
        const Coeff& right = t_bar[i * m + g];
        if (T::is_zero(right)) continue;
        Coeff term = left;
        term *= right;
        term *= T::from_rational(ExactScalar(monomial_weight(inner[g])));
        v -= term;
      }
      out[i * n + j] = std::move(v);
    }
  });
  return out;
}

/// All eigenvalues of the compression, ascending.
inline std::vector<double> eigenvalues(const CompressionMatrix& mat, const JacobiOptions& opts = {}) {
  return jacobi_eigenvalues(mat.entries, mat.size(), opts).eigenvalues;
}

/// Coefficients of the normalized Bergman kernel k_p of D in the orthonormal basis,
/// c_j = (1 - |p|^2) sqrt(j + 1) conj(p)^j for j = 0..degree.
inline std::vector<std::complex<double>> kernel_vector(std::complex<double> p, int degree) {
  if (std::abs(p) >= 1.0) throw std::invalid_argument("kernel centre must lie in the open disc");
  std::vector<std::complex<double>> c(degree + 1);
  const double scale = 1.0 - std::norm(p);
  std::complex<double> power = 1.0;
  for (int j = 0; j <= degree; ++j) {
    c[j] = scale * std::sqrt(double(j + 1)) * power;
    power *= std::conj(p);
  }
  return c;
}

/// Squared norm of the truncated kernel vector, 1 - x^{N+1}((N+2) - (N+1)x) with x = |p|^2.
inline double kernel_mass(std::complex<double> p, int degree) {
  double s = 0.0;
  for (const auto& c : kernel_vector(p, degree)) s += std::norm(c);
  return s;
}

/// Smallest degree whose truncated kernel keeps at least `mass` of k_p.
inline int kernel_degree_for_mass(std::complex<double> p, double mass) {
  int degree = 0;
  while (kernel_mass(p, degree) < mass) {
    if (++degree > 100000) throw std::invalid_argument("kernel centre too close to the boundary");
  }
  return degree;
}

/// ||(M - lambda) f|| for f = g (x) k_p, with g on the first dim-1 coordinates
/// (graded-lex basis of D^{dim-1} at the same degree cap) and k_p on the last.
template <class Coeff>
double weyl_residual(const PolySymbol<Coeff>& sym, double lambda, std::span<const std::complex<double>> g_coeffs,
                     std::complex<double> p, const BasisTruncation& trunc, double min_kernel_mass = 0.99) {
  if (sym.dim() < 2) throw std::invalid_argument("weyl_residual needs dim >= 2");
  require_same_dim(trunc.dim(), sym.dim(), "truncation vs symbol");
  const int cap = trunc.degree_cap();
  if (kernel_mass(p, cap) < min_kernel_mass)
    throw std::invalid_argument("truncation degree too small to hold the kernel mass; raise the degree");
  BasisTruncation slice_basis(sym.dim() - 1, cap);
  if (g_coeffs.size() != slice_basis.size()) throw std::invalid_argument("g coefficient vector has wrong length");

  const auto k = kernel_vector(p, cap);
  const std::size_t n = trunc.size();
  std::vector<std::complex<double>> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    const MultiIndex& a = trunc[i];
    std::vector<int> head(a.entries().begin(), a.entries().end() - 1);
    f[i] = g_coeffs[*slice_basis.index_of(MultiIndex(head))] * k[a[a.dim() - 1]];
  }
  const CompressionMatrix mat = assemble(sym, trunc);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> r = -lambda * f[i];
    for (std::size_t j = 0; j < n; ++j) r += mat.at(i, j) * f[j];
    s += std::norm(r);
  }
  return std::sqrt(s);
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_GALERKIN_HPP
