#ifndef HANKEL_SPECTRA_POLY_SYMBOL_HPP
#define HANKEL_SPECTRA_POLY_SYMBOL_HPP

#include <algorithm>
#include <complex>
#include <cstdio>
#include <span>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "exact.hpp"
#include "multi_index.hpp"

namespace hankel_spectra {

/// Exponent pair (holo, antiholo) of one monomial z^n zbar^m.
struct TermKey {
  MultiIndex holo;
  MultiIndex antiholo;

  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;

  Winding winding() const {
    Winding k(holo.dim());
    for (std::size_t i = 0; i < holo.dim(); ++i) k[i] = holo[i] - antiholo[i];
    return k;
  }
};

/// Polynomial in z and zbar on D^dim with coefficients in Coeff
/// (ComplexRational for the exact path, std::complex<double> otherwise).
/// Always canonical: one entry per key, no zero coefficients.
template <class Coeff>
class PolySymbol {
 public:
  using Traits = ScalarTraits<Coeff>;

  PolySymbol() = default;
  explicit PolySymbol(std::size_t dim) : dim_(dim) {}

  static PolySymbol constant(std::size_t dim, const Coeff& c) {
    PolySymbol p(dim);
    p.add_term(c, MultiIndex(dim), MultiIndex(dim));
    return p;
  }
  static PolySymbol monomial(const MultiIndex& n, const MultiIndex& m, const Coeff& c = Coeff(1)) {
    require_same_dim(n.dim(), m.dim(), "monomial exponents");
    PolySymbol p(n.dim());
    p.add_term(c, n, m);
    return p;
  }
  static PolySymbol from_monomial(const MonomialSymbol& sym) { return monomial(sym.holo, sym.antiholo); }

  std::size_t dim() const { return dim_; }
  const std::map<TermKey, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Coeff& c, const MultiIndex& n, const MultiIndex& m) {
    require_same_dim(n.dim(), dim_, "term holo exponent");
    require_same_dim(m.dim(), dim_, "term antiholo exponent");
    if (Traits::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(TermKey{n, m}, c);
    if (!inserted) {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Holomorphic iff no term carries a zbar factor.
  bool is_holomorphic() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.antiholo.is_zero(); });
  }

  /// Per-coordinate max of n_k + m_k over all terms.
  std::vector<int> coordinate_degree() const {
    std::vector<int> deg(dim_, 0);
    for (const auto& [key, c] : terms_)
      for (std::size_t k = 0; k < dim_; ++k) deg[k] = std::max(deg[k], key.holo[k] + key.antiholo[k]);
    return deg;
  }
  /// Per-coordinate max of n_k (how far the symbol can raise a holomorphic exponent).
  std::vector<int> holomorphic_degree() const {
    std::vector<int> deg(dim_, 0);
    for (const auto& [key, c] : terms_)
      for (std::size_t k = 0; k < dim_; ++k) deg[k] = std::max(deg[k], key.holo[k]);
    return deg;
  }

  /// Single term with coefficient c: returns (monomial, c).
  std::optional<std::pair<MonomialSymbol, Coeff>> as_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [key, c] = *terms_.begin();
    return std::make_pair(MonomialSymbol(key.holo, key.antiholo), c);
  }

  PolySymbol conjugate() const {
    PolySymbol out(dim_);
    for (const auto& [key, c] : terms_) out.add_term(Traits::conjugate(c), key.antiholo, key.holo);
    return out;
  }

  PolySymbol& operator+=(const PolySymbol& o) {
    adopt_dim(o);
    for (const auto& [key, c] : o.terms_) add_term(c, key.holo, key.antiholo);
    return *this;
  }
  PolySymbol& operator*=(const Coeff& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
  }

  friend PolySymbol operator+(PolySymbol a, const PolySymbol& b) { return a += b; }
  friend PolySymbol operator-(PolySymbol a, const PolySymbol& b) {
    PolySymbol nb = b;
    nb *= Coeff(-1);
    return a += nb;
  }
  friend PolySymbol operator*(const PolySymbol& a, const PolySymbol& b) {
    std::size_t dim = std::max(a.dim_, b.dim_);
    PolySymbol x = a.lifted(dim), y = b.lifted(dim);
    PolySymbol out(dim);
    for (const auto& [ka, ca] : x.terms_)
      for (const auto& [kb, cb] : y.terms_) {
        MultiIndex n(dim), m(dim);
        for (std::size_t k = 0; k < dim; ++k) {
          n.set(k, ka.holo[k] + kb.holo[k]);
          m.set(k, ka.antiholo[k] + kb.antiholo[k]);
        }
        Coeff c = ca;
        c *= cb;
        out.add_term(c, n, m);
      }
    return out;
  }
  friend bool operator==(const PolySymbol& a, const PolySymbol& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Same polynomial viewed on a higher-dimensional polydisc (new coordinates unused).
  PolySymbol lifted(std::size_t dim) const {
    if (dim < dim_) throw std::invalid_argument("cannot lift to a smaller dimension");
    if (dim == dim_) return *this;
    PolySymbol out(dim);
    for (const auto& [key, c] : terms_) out.add_term(c, pad(key.holo, dim), pad(key.antiholo, dim));
    return out;
  }

  PolySymbol pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power");
    PolySymbol out = constant(dim_, Coeff(1));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
  }

  template <class Other>
  PolySymbol<Other> convert() const {
    PolySymbol<Other> out(dim_);
    for (const auto& [key, c] : terms_) out.add_term(Other(ScalarTraits<Coeff>::to_complex(c)), key.holo, key.antiholo);
    return out;
  }

  /// psi(z) at a point of the closed polydisc.
  std::complex<double> evaluate(std::span<const std::complex<double>> z) const {
    std::complex<double> sum{};
    for (const auto& [key, c] : terms_) {
      std::complex<double> t = Traits::to_complex(c);
      for (std::size_t k = 0; k < dim_; ++k) {
        for (int e = 0; e < key.holo[k]; ++e) t *= z[k];
        for (int e = 0; e < key.antiholo[k]; ++e) t *= std::conj(z[k]);
      }
      sum += t;
    }
    return sum;
  }

 private:
  void adopt_dim(const PolySymbol& o) {
    if (o.dim_ > dim_) *this = lifted(o.dim_);
  }
  static MultiIndex pad(const MultiIndex& a, std::size_t dim) {
    MultiIndex out(dim);
    for (std::size_t k = 0; k < a.dim(); ++k) out.set(k, a[k]);
    return out;
  }

  std::size_t dim_ = 0;
  std::map<TermKey, Coeff> terms_;
};

using ExactPolySymbol = PolySymbol<ComplexRational>;
using FloatPolySymbol = PolySymbol<std::complex<double>>;

/// Stable 64-bit FNV-1a hash of the canonical term list (matrix dump header).
template <class Coeff>
std::uint64_t symbol_hash(const PolySymbol<Coeff>& sym) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  mix(std::to_string(sym.dim()));
  for (const auto& [key, c] : sym.terms()) {
    mix(key.holo.to_string());
    mix(key.antiholo.to_string());
    if constexpr (ScalarTraits<Coeff>::exact) {
      mix(to_string(c));
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.real(), c.imag());
      mix(buf);
    }
  }
  return h;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_POLY_SYMBOL_HPP
