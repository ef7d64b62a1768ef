#ifndef HANKEL_SPECTRA_MULTI_INDEX_HPP
#define HANKEL_SPECTRA_MULTI_INDEX_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hankel_spectra {

/// Largest ambient dimension accepted by default. Subset enumeration is 2^dim.
inline constexpr std::size_t kDefaultMaxDim = 8;

/// Non-negative exponent vector (alpha, n, m, beta).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
  MultiIndex(std::initializer_list<int> values) : entries_(values) { validate(); }
  explicit MultiIndex(std::vector<int> values) : entries_(std::move(values)) { validate(); }

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  void set(std::size_t k, int value) {
    if (value < 0) throw std::invalid_argument("MultiIndex entries must be non-negative");
    entries_[k] = value;
  }
  std::span<const int> entries() const { return entries_; }

  int max_entry() const { return entries_.empty() ? 0 : *std::max_element(entries_.begin(), entries_.end()); }
  int total_degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(entries_[k]);
    }
    return out + ")";
  }

 private:
  void validate() const {
    for (int e : entries_)
      if (e < 0) throw std::invalid_argument("MultiIndex entries must be non-negative");
  }
  std::vector<int> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiIndex& a) { return os << a.to_string(); }

/// Signed exponent vector (winding k, or a radial-integral exponent).
class Winding {
 public:
  Winding() = default;
  explicit Winding(std::size_t dim) : entries_(dim, 0) {}
  Winding(std::initializer_list<int> values) : entries_(values) {}
  explicit Winding(std::vector<int> values) : entries_(std::move(values)) {}

  std::size_t dim() const { return entries_.size(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  int& operator[](std::size_t k) { return entries_[k]; }
  std::span<const int> entries() const { return entries_; }

  friend bool operator==(const Winding&, const Winding&) = default;
  friend auto operator<=>(const Winding&, const Winding&) = default;

 private:
  std::vector<int> entries_;
};

/// Non-empty strictly increasing set of 0-based coordinate indices.
/// Rendered 1-based (B ⊆ {1..dim}) in every user-facing format.
class SubsetB {
 public:
  SubsetB() = default;
  SubsetB(std::vector<std::size_t> members, std::size_t dim) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("subset B must be non-empty");
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] >= dim) throw std::invalid_argument("subset B member out of range");
      if (i > 0 && members_[i] <= members_[i - 1])
        throw std::invalid_argument("subset B members must be strictly increasing");
    }
  }

  static SubsetB full(std::size_t dim) {
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return SubsetB(std::move(all), dim);
  }

  /// Subset from a bit mask over coordinates 0..dim-1; mask must be non-zero.
  static SubsetB from_mask(std::uint32_t mask, std::size_t dim) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < dim; ++k)
      if (mask & (1u << k)) members.push_back(k);
    return SubsetB(std::move(members), dim);
  }

  std::span<const std::size_t> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t k) const { return std::binary_search(members_.begin(), members_.end(), k); }
  bool is_full(std::size_t dim) const { return members_.size() == dim; }

  friend bool operator==(const SubsetB&, const SubsetB&) = default;
  friend auto operator<=>(const SubsetB&, const SubsetB&) = default;

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(members_[i] + 1);
    }
    return out + "}";
  }

 private:
  std::vector<std::size_t> members_;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

/// All multi-indices of length `dim` with every entry <= cap, graded lexicographic:
/// ascending total degree, ties broken lexicographically. This order is frozen in
/// the matrix dump format.
inline std::vector<MultiIndex> graded_lex_box(std::size_t dim, int cap) {
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  std::vector<MultiIndex> out;
  std::vector<int> cur(dim, 0);
  for (;;) {
    out.emplace_back(cur);
    std::size_t k = 0;
    while (k < dim && cur[k] == cap) cur[k++] = 0;
    if (k == dim) break;
    ++cur[k];
  }
  std::stable_sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_MULTI_INDEX_HPP
