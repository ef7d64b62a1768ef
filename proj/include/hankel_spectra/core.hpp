#ifndef HANKEL_SPECTRA_CORE_HPP
#define HANKEL_SPECTRA_CORE_HPP

// Closed-form spectra of H*_psi H_psi on A^2(D^n) for monomial symbols
// psi(z) = z^n zbar^m. Eigenvector z^alpha has eigenvalue lambda(n, m, alpha, full set);
// proper subsets B give the limit points of that eigenvalue family.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"
#include "multi_index.hpp"

namespace hankel_spectra {

struct MonomialSymbol {
  MultiIndex holo;      // n
  MultiIndex antiholo;  // m

  MonomialSymbol() = default;
  MonomialSymbol(MultiIndex n, MultiIndex m) : holo(std::move(n)), antiholo(std::move(m)) {
    require_same_dim(holo.dim(), antiholo.dim(), "monomial symbol exponents");
    if (holo.dim() == 0) throw std::invalid_argument("monomial symbol needs dim >= 1");
  }
  std::size_t dim() const { return holo.dim(); }
};

/// lambda_{n,m,alpha,B}. First branch when alpha_k < m_k - n_k for some k in B.
inline ExactScalar lambda_value(const MultiIndex& n, const MultiIndex& m, const MultiIndex& alpha,
                                const SubsetB& subset) {
  require_same_dim(n.dim(), m.dim(), "n vs m");
  require_same_dim(n.dim(), alpha.dim(), "n vs alpha");
  if (subset.size() == 0) throw std::invalid_argument("subset B must be non-empty");

  ExactScalar head(1);
  bool kernel_branch = false;
  for (std::size_t k : subset.members()) {
    if (k >= n.dim()) throw std::invalid_argument("subset B member out of range");
    head *= ExactScalar(alpha[k] + 1, alpha[k] + n[k] + m[k] + 1);
    if (alpha[k] < m[k] - n[k]) kernel_branch = true;
  }
  if (kernel_branch) {
    head.canonicalize();
    return head;
  }
  ExactScalar tail(1);
  for (std::size_t k : subset.members()) {
    long d = alpha[k] + n[k] + 1;
    tail *= ExactScalar(static_cast<long>(alpha[k] + 1) * (alpha[k] + n[k] - m[k] + 1), d * d);
  }
  ExactScalar out = head - tail;
  out.canonicalize();
  return out;
}

inline ExactScalar lambda_value(const MonomialSymbol& sym, const MultiIndex& alpha, const SubsetB& subset) {
  return lambda_value(sym.holo, sym.antiholo, alpha, subset);
}

enum class SymbolMultiplicity { AllFinite, AllInfinite, ZeroOperator };

inline const char* to_string(SymbolMultiplicity c) {
  switch (c) {
    case SymbolMultiplicity::AllFinite: return "AllFinite";
    case SymbolMultiplicity::AllInfinite: return "AllInfinite";
    case SymbolMultiplicity::ZeroOperator: return "ZeroOperator";
  }
  return "?";
}

/// m = 0 gives the zero operator; otherwise a coordinate with n_k + m_k = 0 makes
/// every eigenvalue infinitely degenerate, and none does otherwise.
inline SymbolMultiplicity multiplicity_class(const MonomialSymbol& sym) {
  if (sym.antiholo.is_zero()) return SymbolMultiplicity::ZeroOperator;
  for (std::size_t k = 0; k < sym.dim(); ++k)
    if (sym.holo[k] + sym.antiholo[k] == 0) return SymbolMultiplicity::AllInfinite;
  return SymbolMultiplicity::AllFinite;
}

/// Per-value multiplicity. LimitOnly marks values with no full-B provenance inside
/// the enumeration cap (for m != 0 this always includes 0, which is never an eigenvalue).
enum class Multiplicity { Finite, Infinite, LimitOnly };

inline const char* to_string(Multiplicity c) {
  switch (c) {
    case Multiplicity::Finite: return "Finite";
    case Multiplicity::Infinite: return "Infinite";
    case Multiplicity::LimitOnly: return "LimitOnly";
  }
  return "?";
}

struct Provenance {
  MultiIndex alpha;  // entries outside `subset` are zero and carry no meaning
  SubsetB subset;
  bool full_set = false;

  friend bool operator==(const Provenance&, const Provenance&) = default;
  friend auto operator<=>(const Provenance& a, const Provenance& b) {
    if (a.full_set != b.full_set) return b.full_set <=> a.full_set;  // full set first
    if (auto c = a.subset <=> b.subset; c != 0) return c;
    return a.alpha <=> b.alpha;
  }
};

struct EigenRecord {
  ExactScalar value;
  std::vector<Provenance> provenance;  // sorted; empty only for the bare 0 record
  Multiplicity multiplicity = Multiplicity::LimitOnly;
  bool is_limit_point = false;         // some proper-B provenance, or value 0
  bool in_essential_spectrum = false;  // filled by classify_essential()

  bool attained() const {
    return std::any_of(provenance.begin(), provenance.end(), [](const Provenance& p) { return p.full_set; });
  }
};

struct SpectrumSet {
  std::vector<EigenRecord> records;  // ascending by value, one per distinct value
  int alpha_cap = 0;
  bool contains_zero = false;
  bool truncated = true;  // the true set is countably infinite
  std::optional<std::string> warning;

  std::vector<ExactScalar> values() const {
    std::vector<ExactScalar> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.value);
    return out;
  }
  const EigenRecord* find(const ExactScalar& v) const {
    auto it = std::lower_bound(records.begin(), records.end(), v,
                               [](const EigenRecord& r, const ExactScalar& x) { return r.value < x; });
    return (it != records.end() && it->value == v) ? &*it : nullptr;
  }
};

namespace detail {

struct RationalLess {
  bool operator()(const ExactScalar& a, const ExactScalar& b) const { return cmp(a, b) < 0; }
};

using RecordMap = std::map<ExactScalar, EigenRecord, RationalLess>;

inline void add_value(RecordMap& map, ExactScalar value, std::optional<Provenance> prov) {
  auto [it, inserted] = map.try_emplace(value);
  if (inserted) it->second.value = std::move(value);
  if (prov) it->second.provenance.push_back(std::move(*prov));
}

/// Every alpha with entries <= cap on the coordinates of `subset`, zero elsewhere.
template <class Fn>
void for_each_alpha_on(const SubsetB& subset, std::size_t dim, int cap, Fn&& fn) {
  MultiIndex alpha(dim);
  auto members = subset.members();
  for (;;) {
    fn(alpha);
    std::size_t i = 0;
    while (i < members.size() && alpha[members[i]] == cap) alpha.set(members[i++], 0);
    if (i == members.size()) break;
    alpha.set(members[i], alpha[members[i]] + 1);
  }
}

inline SpectrumSet finalize(RecordMap& map, int alpha_cap, const MonomialSymbol& sym) {
  SymbolMultiplicity cls = multiplicity_class(sym);
  SpectrumSet out;
  out.alpha_cap = alpha_cap;
  out.records.reserve(map.size());
  for (auto& [value, rec] : map) {
    std::sort(rec.provenance.begin(), rec.provenance.end());
    rec.provenance.erase(std::unique(rec.provenance.begin(), rec.provenance.end()), rec.provenance.end());
    bool proper = std::any_of(rec.provenance.begin(), rec.provenance.end(),
                              [](const Provenance& p) { return !p.full_set; });
    rec.is_limit_point = proper || sgn(rec.value) == 0;
    if (cls == SymbolMultiplicity::ZeroOperator) {
      rec.multiplicity = Multiplicity::Infinite;
    } else if (!rec.attained()) {
      rec.multiplicity = Multiplicity::LimitOnly;
    } else {
      rec.multiplicity = cls == SymbolMultiplicity::AllInfinite ? Multiplicity::Infinite : Multiplicity::Finite;
    }
    if (sgn(rec.value) == 0) out.contains_zero = true;
    out.records.push_back(std::move(rec));
  }
  return out;
}

inline void check_dim(const MonomialSymbol& sym, std::size_t max_dim) {
  if (sym.dim() == 0) throw std::invalid_argument("symbol dimension must be >= 1");
  if (sym.dim() > max_dim) throw std::invalid_argument("symbol dimension exceeds configured maximum");
}

}  // namespace detail

/// {0} together with lambda(alpha, B) for every non-empty B and every alpha with
/// entries <= alpha_cap on B. Equal values are merged into one record.
inline SpectrumSet enumerate_spectrum(const MonomialSymbol& sym, int alpha_cap,
                                      std::size_t max_dim = kDefaultMaxDim) {
  if (alpha_cap < 0) throw std::invalid_argument("alpha_cap must be >= 0");
  detail::check_dim(sym, max_dim);
  const std::size_t dim = sym.dim();
  detail::RecordMap map;
  detail::add_value(map, ExactScalar(0), std::nullopt);
  if (sym.antiholo.is_zero()) {
    // Zero operator: every lambda(alpha, B) vanishes.
    SpectrumSet out = detail::finalize(map, alpha_cap, sym);
    out.records.front().provenance.push_back({MultiIndex(dim), SubsetB::full(dim), true});
    return out;
  }
  for (std::uint32_t mask = 1; mask < (1u << dim); ++mask) {
    SubsetB subset = SubsetB::from_mask(mask, dim);
    bool full = subset.is_full(dim);
    detail::for_each_alpha_on(subset, dim, alpha_cap, [&](const MultiIndex& alpha) {
      detail::add_value(map, lambda_value(sym, alpha, subset), Provenance{alpha, subset, full});
    });
  }
  return detail::finalize(map, alpha_cap, sym);
}

/// Essential spectrum. With a coordinate where n_k + m_k = 0 it is the whole
/// spectrum; otherwise {0} plus the proper-subset values. m = 0 yields {0} with a warning.
inline SpectrumSet enumerate_essential_spectrum(const MonomialSymbol& sym, int alpha_cap,
                                                std::size_t max_dim = kDefaultMaxDim) {
  if (alpha_cap < 0) throw std::invalid_argument("alpha_cap must be >= 0");
  detail::check_dim(sym, max_dim);
  SymbolMultiplicity cls = multiplicity_class(sym);
  if (cls == SymbolMultiplicity::ZeroOperator) {
    SpectrumSet out = enumerate_spectrum(sym, alpha_cap, max_dim);
    out.warning = "zero operator (m = 0): essential spectrum is {0}";
    for (auto& r : out.records) r.in_essential_spectrum = true;
    return out;
  }
  if (cls == SymbolMultiplicity::AllInfinite) {
    SpectrumSet out = enumerate_spectrum(sym, alpha_cap, max_dim);
    for (auto& r : out.records) r.in_essential_spectrum = true;
    return out;
  }
  const std::size_t dim = sym.dim();
  detail::RecordMap map;
  detail::add_value(map, ExactScalar(0), std::nullopt);
  for (std::uint32_t mask = 1; mask + 1 < (1u << dim); ++mask) {
    SubsetB subset = SubsetB::from_mask(mask, dim);
    detail::for_each_alpha_on(subset, dim, alpha_cap, [&](const MultiIndex& alpha) {
      detail::add_value(map, lambda_value(sym, alpha, subset), Provenance{alpha, subset, false});
    });
  }
  SpectrumSet out = detail::finalize(map, alpha_cap, sym);
  for (auto& r : out.records) r.in_essential_spectrum = true;
  return out;
}

/// Marks each record of a spectrum enumeration with essential-spectrum membership.
inline void classify_essential(SpectrumSet& spectrum, const MonomialSymbol& sym) {
  SpectrumSet ess = enumerate_essential_spectrum(sym, spectrum.alpha_cap);
  for (auto& r : spectrum.records) r.in_essential_spectrum = ess.find(r.value) != nullptr;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_CORE_HPP
