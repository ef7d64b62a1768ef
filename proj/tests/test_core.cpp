#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hankel_spectra/core.hpp"

using namespace hankel_spectra;

namespace {

// ||H_psi z^alpha||^2 / ||z^alpha||^2 for psi = z^n zbar^m from first principles:
// psi z^alpha = z^{alpha+n} zbar^m, whose Bergman projection is c z^{alpha+n-m} when
// alpha+n >= m componentwise and 0 otherwise. All norms are per coordinate / pi.
ExactScalar rayleigh_oracle(const MultiIndex& n, const MultiIndex& m, const MultiIndex& alpha) {
  ExactScalar full(1), projected(1), base(1);
  bool projects = true;
  for (std::size_t k = 0; k < n.dim(); ++k) {
    const long a = alpha[k] + n[k], b = m[k];
    // ||z^a zbar^b||^2 = int r^{2(a+b)} = 1/(a+b+1)
    full *= ExactScalar(1, a + b + 1);
    base *= ExactScalar(1, alpha[k] + 1);
    if (a < b) {
      projects = false;
      continue;
    }
    // <z^a zbar^b, z^{a-b}> = 1/(a+1);  ||z^{a-b}||^2 = 1/(a-b+1)
    ExactScalar ip(1, a + 1);
    projected *= ip * ip / ExactScalar(1, a - b + 1);
  }
  ExactScalar out = (projects ? full - projected : full) / base;
  out.canonicalize();
  return out;
}

MultiIndex mi(std::initializer_list<int> v) { return MultiIndex(v); }

}  // namespace

TEST(LambdaValue, DocumentedValues) {
  EXPECT_EQ(lambda_value(mi({0}), mi({1}), mi({0}), SubsetB::full(1)), ExactScalar(1, 2));
  EXPECT_EQ(lambda_value(mi({0}), mi({1}), mi({1}), SubsetB::full(1)), ExactScalar(1, 6));
  EXPECT_EQ(lambda_value(mi({2, 0}), mi({0, 0}), mi({3, 5}), SubsetB::full(2)), ExactScalar(0));
  EXPECT_EQ(lambda_value(mi({1, 0}), mi({1, 1}), mi({0, 0}), SubsetB::full(2)), ExactScalar(1, 6));
}

TEST(LambdaValue, ReducedFraction) {
  ExactScalar v = lambda_value(mi({1, 2}), mi({3, 1}), mi({4, 2}), SubsetB::full(2));
  ExactScalar copy = v;
  copy.canonicalize();
  EXPECT_EQ(v.get_num(), copy.get_num());
  EXPECT_EQ(v.get_den(), copy.get_den());
  EXPECT_GT(v.get_den(), 0);
}

TEST(LambdaValue, RejectsBadInput) {
  EXPECT_THROW(lambda_value(mi({0, 1}), mi({1}), mi({0}), SubsetB::full(1)), std::invalid_argument);
  EXPECT_THROW(SubsetB({}, 2), std::invalid_argument);
  EXPECT_THROW(SubsetB({1, 0}, 2), std::invalid_argument);
  EXPECT_THROW(SubsetB({2}, 2), std::invalid_argument);
  EXPECT_THROW(MultiIndex({1, -1}), std::invalid_argument);
}

TEST(LambdaValue, MatchesRayleighQuotientOracle) {
  for (std::size_t dim = 1; dim <= 2; ++dim)
    for (const auto& n : graded_lex_box(dim, 4))
      for (const auto& m : graded_lex_box(dim, 4))
        for (const auto& alpha : graded_lex_box(dim, 4))
          ASSERT_EQ(lambda_value(n, m, alpha, SubsetB::full(dim)), rayleigh_oracle(n, m, alpha))
              << "n=" << n << " m=" << m << " alpha=" << alpha;
}

TEST(LambdaValue, UnitIntervalAndSubtractedTermNonNegative) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(0, 5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t dim = 1 + trial % 3;
    std::vector<int> n(dim), m(dim), a(dim);
    for (std::size_t k = 0; k < dim; ++k) n[k] = e(rng), m[k] = e(rng), a[k] = e(rng);
    std::uint32_t mask = 1 + rng() % ((1u << dim) - 1);
    SubsetB b = SubsetB::from_mask(mask, dim);
    ExactScalar v = lambda_value(MultiIndex(n), MultiIndex(m), MultiIndex(a), b);
    ASSERT_GE(v, 0);
    ASSERT_LE(v, 1);
    ExactScalar head(1);
    for (std::size_t k : b.members()) head *= ExactScalar(a[k] + 1, a[k] + n[k] + m[k] + 1);
    ASSERT_LE(v, head);
  }
}

TEST(LambdaValue, HolomorphicSymbolGivesZero) {
  for (const auto& n : graded_lex_box(2, 3))
    for (const auto& alpha : graded_lex_box(2, 4))
      for (std::uint32_t mask = 1; mask < 4; ++mask)
        ASSERT_EQ(lambda_value(n, MultiIndex(2), alpha, SubsetB::from_mask(mask, 2)), 0);
}

TEST(LambdaValue, LimitPointLaw) {
  // lambda(alpha(j), full) -> lambda(alpha, B) as alpha_k(j) = j for k outside B.
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t dim = 2 + trial % 2;
    std::vector<int> n(dim), m(dim), a(dim);
    for (std::size_t k = 0; k < dim; ++k) n[k] = e(rng), m[k] = e(rng), a[k] = e(rng);
    std::uint32_t mask = 1 + rng() % ((1u << dim) - 2);  // proper subset
    SubsetB b = SubsetB::from_mask(mask, dim);
    ExactScalar limit = lambda_value(MultiIndex(n), MultiIndex(m), MultiIndex(a), b);
    for (int j : {10, 100, 1000, 10000}) {
      std::vector<int> aj = a;
      for (std::size_t k = 0; k < dim; ++k)
        if (!b.contains(k)) aj[k] = j;
      ExactScalar v = lambda_value(MultiIndex(n), MultiIndex(m), MultiIndex(aj), SubsetB::full(dim));
      ExactScalar diff = abs(v - limit);
      ASSERT_LT(diff, ExactScalar(10, j)) << "trial " << trial << " j=" << j;
    }
  }
}

TEST(LambdaValue, PermutationSymmetry) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> n(3), m(3), a(3);
    for (int k = 0; k < 3; ++k) n[k] = e(rng), m[k] = e(rng), a[k] = e(rng);
    std::uint32_t mask = 1 + rng() % 7;
    std::vector<std::size_t> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> pn(3), pm(3), pa(3);
    std::uint32_t pmask = 0;
    for (int k = 0; k < 3; ++k) {
      pn[perm[k]] = n[k], pm[perm[k]] = m[k], pa[perm[k]] = a[k];
      if (mask & (1u << k)) pmask |= 1u << perm[k];
    }
    ASSERT_EQ(lambda_value(MultiIndex(n), MultiIndex(m), MultiIndex(a), SubsetB::from_mask(mask, 3)),
              lambda_value(MultiIndex(pn), MultiIndex(pm), MultiIndex(pa), SubsetB::from_mask(pmask, 3)));
  }
}

TEST(EnumerateSpectrum, ConjugateZOnDisc) {
  SpectrumSet s = enumerate_spectrum(MonomialSymbol(mi({0}), mi({1})), 3);
  std::vector<ExactScalar> want = {0, ExactScalar(1, 20), ExactScalar(1, 12), ExactScalar(1, 6), ExactScalar(1, 2)};
  EXPECT_EQ(s.values(), want);
  EXPECT_TRUE(s.contains_zero);
  EXPECT_TRUE(s.truncated);
  EXPECT_EQ(s.alpha_cap, 3);
}

TEST(EnumerateSpectrum, HolomorphicIsZero) {
  for (int cap : {0, 3, 7}) {
    SpectrumSet s = enumerate_spectrum(MonomialSymbol(mi({1}), mi({0})), cap);
    ASSERT_EQ(s.records.size(), 1u);
    EXPECT_EQ(s.records[0].value, 0);
  }
}

TEST(EnumerateSpectrum, ProductSymbolProvenance) {
  SpectrumSet s = enumerate_spectrum(MonomialSymbol(mi({0, 0}), mi({1, 1})), 2);
  const EigenRecord* half = s.find(ExactScalar(1, 2));
  ASSERT_NE(half, nullptr);
  bool b1 = false, b2 = false;
  for (const auto& p : half->provenance) {
    if (p.subset == SubsetB({0}, 2) && p.alpha[0] == 0) b1 = true;
    if (p.subset == SubsetB({1}, 2) && p.alpha[1] == 0) b2 = true;
  }
  EXPECT_TRUE(b1 && b2);
  const EigenRecord* quarter = s.find(ExactScalar(1, 4));
  ASSERT_NE(quarter, nullptr);
  EXPECT_TRUE(quarter->attained());
  EXPECT_EQ(quarter->provenance.front().alpha, mi({0, 0}));
}

TEST(EnumerateSpectrum, RecordsSortedDistinctWithLimitFlags) {
  MonomialSymbol sym(mi({1, 0}), mi({2, 1}));
  SpectrumSet s = enumerate_spectrum(sym, 5);
  for (std::size_t i = 1; i < s.records.size(); ++i) ASSERT_LT(s.records[i - 1].value, s.records[i].value);
  for (const auto& r : s.records) {
    bool proper = std::any_of(r.provenance.begin(), r.provenance.end(), [](const Provenance& p) { return !p.full_set; });
    EXPECT_EQ(r.is_limit_point, proper || r.value == 0);
    for (const auto& p : r.provenance) {
      if (p.full_set) EXPECT_EQ(lambda_value(sym, p.alpha, p.subset), r.value);
    }
  }
}

TEST(EnumerateSpectrum, AgreesWithBruteForce) {
  MonomialSymbol sym(mi({0, 2}), mi({3, 1}));
  const int cap = 4;
  std::set<ExactScalar, detail::RationalLess> brute{ExactScalar(0)};
  for (const auto& a : graded_lex_box(2, cap))
    for (std::uint32_t mask = 1; mask < 4; ++mask) brute.insert(lambda_value(sym, a, SubsetB::from_mask(mask, 2)));
  auto v = enumerate_spectrum(sym, cap).values();
  EXPECT_EQ(std::vector<ExactScalar>(brute.begin(), brute.end()), v);
}

TEST(MultiplicityClass, Cases) {
  EXPECT_EQ(multiplicity_class(MonomialSymbol(mi({0, 0}), mi({2, 3}))), SymbolMultiplicity::AllFinite);
  EXPECT_EQ(multiplicity_class(MonomialSymbol(mi({0, 0}), mi({2, 0}))), SymbolMultiplicity::AllInfinite);
  EXPECT_EQ(multiplicity_class(MonomialSymbol(mi({3, 1}), mi({0, 0}))), SymbolMultiplicity::ZeroOperator);
  EXPECT_EQ(multiplicity_class(MonomialSymbol(mi({1, 0}), mi({0, 1}))), SymbolMultiplicity::AllFinite);
}

TEST(MultiplicityClass, RecordMultiplicities) {
  SpectrumSet inf = enumerate_spectrum(MonomialSymbol(mi({0, 0}), mi({1, 0})), 3);
  for (const auto& r : inf.records)
    EXPECT_EQ(r.multiplicity, r.attained() ? Multiplicity::Infinite : Multiplicity::LimitOnly);
  SpectrumSet fin = enumerate_spectrum(MonomialSymbol(mi({0, 0}), mi({1, 1})), 3);
  for (const auto& r : fin.records)
    EXPECT_EQ(r.multiplicity, r.attained() ? Multiplicity::Finite : Multiplicity::LimitOnly);
}

TEST(EssentialSpectrum, EqualsSpectrumWhenACoordinateIsFree) {
  MonomialSymbol sym(mi({0, 0}), mi({1, 0}));
  EXPECT_EQ(enumerate_essential_spectrum(sym, 3).values(), enumerate_spectrum(sym, 3).values());
}

TEST(EssentialSpectrum, ProductExcludesQuarter) {
  MonomialSymbol sym(mi({0, 0}), mi({1, 1}));
  SpectrumSet ess = enumerate_essential_spectrum(sym, 2);
  EXPECT_EQ(ess.find(ExactScalar(1, 4)), nullptr);
  EXPECT_NE(ess.find(ExactScalar(1, 2)), nullptr);
  EXPECT_NE(ess.find(ExactScalar(0)), nullptr);
  SpectrumSet s = enumerate_spectrum(sym, 2);
  classify_essential(s, sym);
  EXPECT_FALSE(s.find(ExactScalar(1, 4))->in_essential_spectrum);
  EXPECT_TRUE(s.find(ExactScalar(1, 2))->in_essential_spectrum);
}

TEST(EssentialSpectrum, ZeroOperatorWarns) {
  SpectrumSet s = enumerate_essential_spectrum(MonomialSymbol(mi({2}), mi({0})), 4);
  ASSERT_TRUE(s.warning.has_value());
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0].value, 0);
}

TEST(EssentialSpectrum, RadialDiscSymbolOnlyAccumulatesAtZero) {
  // psi = z zbar on D: single coordinate, so the essential spectrum is {0}
  MonomialSymbol sym(mi({1}), mi({1}));
  SpectrumSet ess = enumerate_essential_spectrum(sym, 30);
  ASSERT_EQ(ess.records.size(), 1u);
  EXPECT_EQ(ess.records[0].value, 0);
  // eigenvalues (a+1)/((a+3)(a+2)^2) decay to 0, so the closure adds only 0
  SpectrumSet s = enumerate_spectrum(sym, 200);
  EXPECT_LT(s.records[1].value, ExactScalar(1, 10000));
}

TEST(GradedLex, OrderAndSize) {
  auto box = graded_lex_box(2, 2);
  ASSERT_EQ(box.size(), 9u);
  std::vector<MultiIndex> want = {mi({0, 0}), mi({0, 1}), mi({1, 0}), mi({0, 2}), mi({1, 1}),
                                  mi({2, 0}), mi({1, 2}), mi({2, 1}), mi({2, 2})};
  EXPECT_EQ(box, want);
}
