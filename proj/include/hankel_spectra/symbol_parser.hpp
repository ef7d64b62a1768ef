#ifndef HANKEL_SPECTRA_SYMBOL_PARSER_HPP
#define HANKEL_SPECTRA_SYMBOL_PARSER_HPP

// Symbol mini-language:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := number | 'i' | 'z'k | 'zb'k | '(' expr ')'
//   number := digits ('.' digits)? | digits '/' digits
//
// with k in 1..8. The dimension is the largest coordinate index used unless a
// larger one is forced. A JSON term list
//   [{"coeff": "1/2" | 3 | {"re": "1/2", "im": "-1"}, "z": [..], "zb": [..]}, ...]
// is accepted as well. Quasi-homogeneous profiles use
//   {"factors": [["c0", "c1", ...], ...], "winding": [k1, ...]}
// where factor k holds the coefficients of f_k(r) = sum c_j r^j.

#include <nlohmann/json.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "exact.hpp"
#include "multi_index.hpp"
#include "poly_symbol.hpp"
#include "quasihomogeneous.hpp"

namespace hankel_spectra {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class SymbolParser {
 public:
  SymbolParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

  ExactPolySymbol parse() {
    ExactPolySymbol out = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

  /// Largest coordinate index mentioned in the text (0 if none).
  static std::size_t max_coordinate(std::string_view text) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != 'z') continue;
      std::size_t j = i + 1;
      if (j < text.size() && text[j] == 'b') ++j;
      if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        best = std::max<std::size_t>(best, text[j] - '0');
    }
    return best;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("symbol parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactPolySymbol expr() {
    ExactPolySymbol out = term();
    for (;;) {
      if (accept('+'))
        out += term();
      else if (accept('-'))
        out = out - term();
      else
        return out;
    }
  }
  ExactPolySymbol term() {
    ExactPolySymbol out = unary();
    while (accept('*')) out = out * unary();
    return out;
  }
  ExactPolySymbol unary() {
    if (accept('-')) {
      ExactPolySymbol v = unary();
      v *= ComplexRational(-1);
      return v;
    }
    if (accept('+')) return unary();
    return power();
  }
  ExactPolySymbol power() {
    ExactPolySymbol base = atom();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    return base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
  }
  ExactPolySymbol atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExactPolySymbol inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ExactPolySymbol::constant(dim_, number());
    if (c == 'i') {
      ++pos_;
      return ExactPolySymbol::constant(dim_, ComplexRational(ExactScalar(0), ExactScalar(1)));
    }
    if (c == 'z') {
      ++pos_;
      bool bar = pos_ < text_.size() && text_[pos_] == 'b';
      if (bar) ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a coordinate index after 'z'");
      int k = text_[pos_++] - '0';
      if (k < 1 || k > int(kDefaultMaxDim)) fail("coordinate index must be in 1..8");
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("coordinate index must be a single digit");
      MultiIndex n(dim_), m(dim_);
      (bar ? m : n).set(std::size_t(k - 1), 1);
      return ExactPolySymbol::monomial(n, m);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  ComplexRational number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ > s;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (!digits()) fail("expected digits after '.'");
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
               std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      digits();
    }
    try {
      return ComplexRational(parse_rational(std::string(text_.substr(start, pos_ - start))));
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }

  std::string_view text_;
  std::size_t dim_;
  std::size_t pos_ = 0;
};

inline ExactScalar json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return ExactScalar(v.get<long>());
  throw ParseError("rational must be a string \"p/q\" or an integer");
}

inline ExactPolySymbol parse_symbol_json(const nlohmann::json& doc, std::size_t forced_dim) {
  if (!doc.is_array()) throw ParseError("JSON symbol must be an array of terms");
  std::size_t dim = std::max<std::size_t>(forced_dim, 1);
  for (const auto& t : doc) {
    if (!t.is_object()) throw ParseError("JSON term must be an object");
    for (const char* key : {"z", "zb"})
      if (t.contains(key)) dim = std::max(dim, t.at(key).size());
  }
  if (dim > kDefaultMaxDim) throw ParseError("dimension exceeds 8");
  ExactPolySymbol out(dim);
  for (const auto& t : doc) {
    ComplexRational c(1);
    if (t.contains("coeff")) {
      const auto& v = t.at("coeff");
      if (v.is_object())
        c = ComplexRational(json_rational(v.value("re", nlohmann::json(0))), json_rational(v.value("im", nlohmann::json(0))));
      else
        c = ComplexRational(json_rational(v));
    }
    auto exponents = [&](const char* key) {
      MultiIndex e(dim);
      if (t.contains(key)) {
        const auto& arr = t.at(key);
        for (std::size_t k = 0; k < arr.size(); ++k) {
          if (!arr[k].is_number_integer() || arr[k].get<int>() < 0) throw ParseError("exponents must be integers >= 0");
          e.set(k, arr[k].get<int>());
        }
      }
      return e;
    };
    out.add_term(c, exponents("z"), exponents("zb"));
  }
  return out;
}

}  // namespace detail

/// Parses a textual or JSON symbol. `forced_dim` raises (never lowers) the inferred dimension.
inline ExactPolySymbol parse_symbol(std::string_view text, std::size_t forced_dim = 0) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty symbol");
  if (text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad JSON symbol: ") + e.what());
    }
    return detail::parse_symbol_json(doc, forced_dim);
  }
  std::size_t used = detail::SymbolParser::max_coordinate(text);
  if (forced_dim > kDefaultMaxDim) throw ParseError("dimension exceeds 8");
  std::size_t dim = std::max<std::size_t>({used, forced_dim, 1});
  return detail::SymbolParser(text, dim).parse();
}

namespace detail {

inline std::string coefficient_text(const ComplexRational& c) {
  if (c.is_real()) return to_fraction_string(c.re);
  if (sgn(c.re) == 0) return to_fraction_string(c.im) + "*i";
  return "(" + to_fraction_string(c.re) + " + " + to_fraction_string(c.im) + "*i)";
}

}  // namespace detail

/// Canonical text form; parse_symbol(serialize_symbol(p), p.dim()) == p.
inline std::string serialize_symbol(const ExactPolySymbol& sym) {
  if (sym.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : sym.terms()) {
    std::vector<std::string> factors;
    for (std::size_t k = 0; k < sym.dim(); ++k) {
      auto factor = [&](const char* name, int e) {
        if (e == 0) return;
        std::string f = name + std::to_string(k + 1);
        if (e > 1) f += "^" + std::to_string(e);
        factors.push_back(f);
      };
      factor("z", key.holo[k]);
      factor("zb", key.antiholo[k]);
    }
    std::string term;
    if (factors.empty() || c != ComplexRational(1)) term = detail::coefficient_text(c);
    for (const auto& f : factors) term += (term.empty() ? "" : "*") + f;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

/// JSON term list with exact "num/den" coefficients.
inline nlohmann::json symbol_to_json(const ExactPolySymbol& sym) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : sym.terms()) {
    std::vector<int> z(key.holo.entries().begin(), key.holo.entries().end());
    std::vector<int> zb(key.antiholo.entries().begin(), key.antiholo.entries().end());
    terms.push_back({{"coeff", {{"re", to_fraction_string(c.re)}, {"im", to_fraction_string(c.im)}}},
                     {"z", z},
                     {"zb", zb}});
  }
  return terms;
}

/// {"factors": [[c0, c1, ...], ...], "winding": [...]} -> separable polynomial profile.
inline QuasiHomogeneousSymbol parse_profile(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad JSON profile: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("factors") || !doc.contains("winding"))
    throw ParseError("profile needs \"factors\" and \"winding\"");
  const auto& factors = doc.at("factors");
  const auto& winding = doc.at("winding");
  if (!factors.is_array() || !winding.is_array() || factors.size() != winding.size() || factors.empty())
    throw ParseError("profile factors and winding must be arrays of equal, non-zero length");
  if (factors.size() > kDefaultMaxDim) throw ParseError("dimension exceeds 8");
  std::vector<RadialFactor> parts;
  for (const auto& f : factors) {
    if (!f.is_array()) throw ParseError("each factor must be a coefficient list");
    RationalPoly poly;
    for (const auto& c : f) poly.push_back(detail::json_rational(c));
    parts.emplace_back(std::move(poly));
  }
  std::vector<int> k;
  for (const auto& w : winding) {
    if (!w.is_number_integer()) throw ParseError("winding entries must be integers");
    k.push_back(w.get<int>());
  }
  return QuasiHomogeneousSymbol(RadialProfile::separable(std::move(parts)), Winding(std::move(k)));
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_SYMBOL_PARSER_HPP
