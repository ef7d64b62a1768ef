#ifndef HANKEL_SPECTRA_EXACT_HPP
#define HANKEL_SPECTRA_EXACT_HPP

// Exact scalars. Rationals are GMP mpq_class, always kept canonical (lowest
// terms, positive denominator); complex rationals are pairs of them.

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace hankel_spectra {

using ExactScalar = mpq_class;

inline ExactScalar make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("zero denominator");
  ExactScalar q(num, den);
  q.canonicalize();
  return q;
}

/// "num/den", or "num" when den == 1.
inline std::string to_fraction_string(const ExactScalar& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p", "p/q" and finite decimals like "-0.125".
inline ExactScalar parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = text.find('.');
  ExactScalar q;
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad decimal: " + text);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad decimal: " + text);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    q = ExactScalar(num, den);
  } else {
    std::string t = text[0] == '+' ? text.substr(1) : text;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (q.get_den() == 0) throw std::domain_error("zero denominator: " + text);
  }
  q.canonicalize();
  return q;
}

inline double to_double(const ExactScalar& q) { return q.get_d(); }

struct ComplexRational {
  ExactScalar re;
  ExactScalar im;

  ComplexRational() = default;
  ComplexRational(ExactScalar r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(ExactScalar r, ExactScalar i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    ExactScalar r = re * o.re - im * o.im;
    ExactScalar i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  ComplexRational& operator*=(const ExactScalar& s) {
    re *= s;
    im *= s;
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    ExactScalar d = o.re * o.re + o.im * o.im;
    if (sgn(d) == 0) throw std::domain_error("division by zero");
    ExactScalar r = (re * o.re + im * o.im) / d;
    ExactScalar i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator*(ComplexRational a, const ExactScalar& s) { return a *= s; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {ExactScalar(-a.re), ExactScalar(-a.im)}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline ComplexRational conj(const ComplexRational& z) { return {z.re, ExactScalar(-z.im)}; }
inline ExactScalar norm_sq(const ComplexRational& z) { return z.re * z.re + z.im * z.im; }

/// "a", "a+bi", "bi" with rational parts.
inline std::string to_string(const ComplexRational& z) {
  if (z.is_real()) return to_fraction_string(z.re);
  std::string im_part = to_fraction_string(abs(z.im)) + "i";
  if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + im_part;
  return to_fraction_string(z.re) + (sgn(z.im) < 0 ? "-" : "+") + im_part;
}

/// Uniform access to exact and floating coefficient types used by the engines.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<ComplexRational> {
  static constexpr bool exact = true;
  static ComplexRational zero() { return {}; }
  static ComplexRational from_rational(const ExactScalar& q) { return {q}; }
  static ComplexRational conjugate(const ComplexRational& z) { return conj(z); }
  static bool is_zero(const ComplexRational& z) { return z.is_zero(); }
  static std::complex<double> to_complex(const ComplexRational& z) { return z.to_complex(); }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> zero() { return {}; }
  static std::complex<double> from_rational(const ExactScalar& q) { return {q.get_d(), 0.0}; }
  static std::complex<double> conjugate(const std::complex<double>& z) { return std::conj(z); }
  static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
};

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_EXACT_HPP
