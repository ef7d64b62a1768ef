#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "hankel_spectra/core.hpp"
#include "hankel_spectra/galerkin.hpp"
#include "hankel_spectra/symbol_parser.hpp"

using namespace hankel_spectra;

namespace {

MultiIndex mi(std::initializer_list<int> v) { return MultiIndex(v); }

ExactPolySymbol parse(const char* text, std::size_t dim = 0) { return parse_symbol(text, dim); }

std::vector<int> ents(const MultiIndex& a) { return {a.entries().begin(), a.entries().end()}; }

// Brute-force <z^a zbar^b, z^c zbar^d> / pi^n, written out independently of the engine.
ExactScalar integrate(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& c,
                      const std::vector<int>& d) {
  ExactScalar v = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] + d[k] != b[k] + c[k]) return 0;
    v /= a[k] + d[k] + 1;
  }
  return v;
}

// <H_psi z^alpha, H_psi z^beta> / pi^n by expanding psi z^alpha term by term, projecting each
// product onto every monomial of the inner box and subtracting.
ComplexRational gram_oracle(const ExactPolySymbol& psi, const MultiIndex& alpha, const MultiIndex& beta,
                            int inner_cap) {
  const std::size_t dim = psi.dim();
  auto plus = [](const MultiIndex& x, const MultiIndex& y) {
    std::vector<int> out(x.dim());
    for (std::size_t k = 0; k < x.dim(); ++k) out[k] = x[k] + y[k];
    return out;
  };
  const std::vector<int> zero(dim, 0);
  ComplexRational total;
  for (const auto& [s, cs] : psi.terms())
    for (const auto& [t, ct] : psi.terms()) {
      // <c_s z^{a+n_s} zbar^{m_s}, c_t z^{b+n_t} zbar^{m_t}>
      ComplexRational w = cs;
      w *= conj(ct);
      w *= integrate(plus(alpha, s.holo), ents(s.antiholo),
                     plus(beta, t.holo), ents(t.antiholo));
      total += w;
    }
  for (const auto& gamma : graded_lex_box(dim, inner_cap)) {
    std::vector<int> g = ents(gamma);
    ExactScalar norm = integrate(g, zero, g, zero);
    ComplexRational left, right;
    for (const auto& [s, cs] : psi.terms()) {
      ComplexRational v = cs;
      v *= integrate(plus(alpha, s.holo), ents(s.antiholo),
                     g, zero);
      left += v;
    }
    for (const auto& [t, ct] : psi.terms()) {
      ComplexRational v = conj(ct);
      v *= integrate(g, zero, plus(beta, t.holo),
                     ents(t.antiholo));
      right += v;
    }
    left *= right;
    left *= ExactScalar(1) / norm;
    total -= left;
  }
  return total;
}

std::vector<std::complex<double>> random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<std::complex<double>> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = d(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[i * n + j] = {d(rng), d(rng)};
      a[j * n + i] = std::conj(a[i * n + j]);
    }
  }
  return a;
}

double nearest(const std::vector<double>& values, double x) {
  double best = INFINITY;
  for (double v : values) best = std::min(best, std::abs(v - x));
  return best;
}

}  // namespace

TEST(Jacobi, MatchesEigenOnRandomHermitian) {
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    auto a = random_hermitian(n, rng);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
    Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues();
    JacobiResult r = jacobi_eigenvalues(a, n);
    ASSERT_EQ(r.eigenvalues.size(), n);
    EXPECT_TRUE(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.eigenvalues[i], ref[i], 1e-11 * (1 + std::abs(ref[i])));
  }
}

TEST(Jacobi, TwoByTwoClosedForm) {
  const double a = 1.5, c = -0.25;
  const std::complex<double> b{0.3, -0.7};
  const double mid = (a + c) / 2, rad = std::sqrt((a - c) * (a - c) / 4 + std::norm(b));
  JacobiResult r = jacobi_eigenvalues({a, b, std::conj(b), c}, 2);
  EXPECT_NEAR(r.eigenvalues[0], mid - rad, 1e-15);
  EXPECT_NEAR(r.eigenvalues[1], mid + rad, 1e-15);
}

TEST(Jacobi, DiagonalInputIsSortedDiagonal) {
  JacobiResult r = jacobi_eigenvalues({3.0, 0, 0, 0, -1.0, 0, 0, 0, 2.0}, 3);
  EXPECT_EQ(r.eigenvalues, (std::vector<double>{-1.0, 2.0, 3.0}));
  EXPECT_EQ(r.sweeps, 0);
}

TEST(Jacobi, RejectsMismatchedStorage) {
  EXPECT_THROW(jacobi_eigenvalues({1.0, 2.0}, 2), std::invalid_argument);
}

TEST(BasisTruncation, SizeOrderingAndGuard) {
  BasisTruncation t(2, 3);
  EXPECT_EQ(t.size(), 16u);
  EXPECT_EQ(t[0], mi({0, 0}));
  EXPECT_EQ(t.ordering(), graded_lex_box(2, 3));
  EXPECT_EQ(*t.index_of(t[7]), 7u);
  EXPECT_FALSE(t.index_of(mi({4, 0})));
  EXPECT_NO_THROW(BasisTruncation(2, 140));  // 141^2 = 19881
  EXPECT_THROW(BasisTruncation(2, 141), SizeGuardError);
  EXPECT_THROW(BasisTruncation(8, 10), SizeGuardError);
}

TEST(HankelGram, DocumentedEntries) {
  // zbar on D, alpha = beta = 0
  EXPECT_EQ(hankel_gram_monomial(parse("zb1"), mi({0}), mi({0}), 1), ComplexRational(ExactScalar(1, 2)));
  // holomorphic symbols annihilate
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_TRUE(hankel_gram_monomial(parse("z1"), mi({a}), mi({b}), 5).is_zero());
  // zbar_1 (zbar_2 + 1) on D^2 at the origin, frozen from the brute-force oracle
  ExactPolySymbol psi = parse("zb1*(zb2+1)");
  EXPECT_EQ(gram_oracle(psi, mi({0, 0}), mi({0, 0}), 1), ComplexRational(ExactScalar(3, 4)));
  EXPECT_EQ(hankel_gram_monomial(psi, mi({0, 0}), mi({0, 0}), 1), ComplexRational(ExactScalar(3, 4)));
  EXPECT_NEAR(std::abs(hankel_gram_entry(psi, mi({0, 0}), mi({0, 0}), 1) - 0.75), 0.0, 1e-15);
}

TEST(HankelGram, MatchesBruteForceOracle) {
  for (const char* text : {"zb1*(zb2+1)", "z1*zb1 + 2*zb2^2", "(1/2 + i)*z1^2*zb2 - zb1*zb2", "zb1^2 + 3*z2"}) {
    ExactPolySymbol psi = parse(text, 2);
    const int cap = 2;
    const int inner = required_inner_cap(psi, cap);
    for (const auto& a : graded_lex_box(2, cap))
      for (const auto& b : graded_lex_box(2, cap))
        ASSERT_EQ(hankel_gram_monomial(psi, a, b, inner), gram_oracle(psi, a, b, inner))
            << text << " alpha=" << a << " beta=" << b;
  }
}

TEST(HankelGram, RefusesShortInnerCap) {
  ExactPolySymbol psi = parse("zb1*(zb2+1)");
  EXPECT_EQ(required_inner_cap(psi, 4), 5);
  EXPECT_THROW(hankel_gram_monomial(psi, mi({4, 0}), mi({4, 0}), 4), std::invalid_argument);
  EXPECT_NO_THROW(hankel_gram_monomial(psi, mi({4, 0}), mi({4, 0}), 5));
}

TEST(Assemble, MonomialSymbolsAreExactlyDiagonal) {
  for (std::size_t dim = 1; dim <= 2; ++dim)
    for (const auto& n : graded_lex_box(dim, 3))
      for (const auto& m : graded_lex_box(dim, 3)) {
        MonomialSymbol mono(n, m);
        ExactPolySymbol psi = ExactPolySymbol::from_monomial(mono);
        const int cap = dim == 1 ? 6 : 4;
        CompressionMatrix mat = assemble(psi, BasisTruncation(dim, cap));
        ASSERT_TRUE(mat.exactly_diagonal()) << "n=" << n << " m=" << m;
        for (std::size_t i = 0; i < mat.size(); ++i)
          ASSERT_EQ(mat.exact_diagonal(i), lambda_value(mono, mat.truncation[i], SubsetB::full(dim)))
              << "n=" << n << " m=" << m << " alpha=" << mat.truncation[i];
      }
}

TEST(Assemble, DocumentedMatrices) {
  CompressionMatrix m = assemble(parse("zb1*zb2"), BasisTruncation(2, 2));
  EXPECT_TRUE(m.exactly_diagonal());
  for (std::size_t i = 0; i < m.size(); ++i)
    EXPECT_EQ(m.exact_diagonal(i), lambda_value(mi({0, 0}), mi({1, 1}), m.truncation[i], SubsetB::full(2)));

  CompressionMatrix zero = assemble(ExactPolySymbol(2), BasisTruncation(2, 3));
  for (const auto& e : zero.entries) EXPECT_EQ(e, std::complex<double>{});

  // duplicate terms are merged; |2|^2 scaling of the Hermitian square
  CompressionMatrix twice = assemble(parse("zb1 + zb1", 2), BasisTruncation(2, 3));
  CompressionMatrix once = assemble(parse("zb1", 2), BasisTruncation(2, 3));
  for (std::size_t i = 0; i < once.exact_gram.size(); ++i) {
    ComplexRational scaled = once.exact_gram[i];
    scaled *= ExactScalar(4);
    EXPECT_EQ(twice.exact_gram[i], scaled);
  }
}

TEST(Assemble, HermitianAndPositive) {
  for (const char* text : {"zb1*(zb2+1)", "zb1*zb2 + zb1", "(2 - i)*z1*zb2^2 + zb1 - 1/3*z2", "zb1^3 + i*zb2"}) {
    ExactPolySymbol psi = parse(text, 2);
    CompressionMatrix exact = assemble(psi, BasisTruncation(2, 5));
    EXPECT_TRUE(exact.exactly_hermitian()) << text;
    EXPECT_LE(exact.hermitian_defect(), 1e-13);
    CompressionMatrix fl = assemble(psi.convert<std::complex<double>>(), BasisTruncation(2, 5));
    EXPECT_EQ(fl.exactness, Exactness::Float);
    EXPECT_LE(fl.hermitian_defect(), 1e-13) << text;
    auto ev = eigenvalues(fl);
    EXPECT_GE(ev.front(), -1e-10) << text;
    for (std::size_t i = 0; i < fl.entries.size(); ++i) EXPECT_NEAR(std::abs(fl.entries[i] - exact.entries[i]), 0, 1e-14);
  }
}

TEST(Assemble, ToeplitzIdentityRoute) {
  for (const char* text : {"zb1", "zb1*zb2", "zb1*(zb2+1)", "z1*zb1 - (1/2)*i*zb2^2", "z1^2*zb2 + zb1"}) {
    ExactPolySymbol psi = parse(text, 2);
    BasisTruncation t(2, 4);
    CompressionMatrix direct = assemble(psi, t);
    std::vector<ComplexRational> via = assemble_via_toeplitz(psi, t, direct.inner_cap);
    ASSERT_EQ(via.size(), direct.exact_gram.size());
    for (std::size_t i = 0; i < via.size(); ++i) ASSERT_EQ(via[i], direct.exact_gram[i]) << text << " entry " << i;
  }
  EXPECT_THROW(assemble_via_toeplitz(parse("zb1*zb2"), BasisTruncation(2, 3), 3), std::invalid_argument);
}

TEST(Eigenvalues, ZbarOnDiscRecoversExactValues) {
  CompressionMatrix m = assemble(parse("zb1"), BasisTruncation(1, 40));
  auto ev = eigenvalues(m);
  for (int j = 0; j <= 40; ++j) {
    double exact = lambda_value(mi({0}), mi({1}), mi({j}), SubsetB::full(1)).get_d();
    EXPECT_LT(nearest(ev, exact), 1e-12) << "alpha=" << j;
  }
  EXPECT_NEAR(ev.back(), 0.5, 1e-12);
  EXPECT_NEAR(ev[ev.size() - 2], 1.0 / 6.0, 1e-12);
}

TEST(Eigenvalues, MatchesCoreForMixedMonomialInBasis) {
  // n = (1,0), m = (1,1), alpha = (0,0): kernel case, 1/6
  CompressionMatrix m = assemble(parse("z1*zb1*zb2"), BasisTruncation(2, 8));
  EXPECT_EQ(m.exact_diagonal(0), ExactScalar(1, 6));
  EXPECT_LT(nearest(eigenvalues(m), 1.0 / 6.0), 1e-12);
}

TEST(Eigenvalues, InteriorEigenvaluesStableUnderRefinement) {
  ExactPolySymbol psi = parse("zb1*(zb2+1)");
  std::vector<std::vector<double>> spectra;
  for (int n : {10, 12, 14}) spectra.push_back(eigenvalues(assemble(psi, BasisTruncation(2, n))));
  for (std::size_t k = 0; k + 1 < spectra.size(); ++k) {
    double worst = 0.0;
    for (double v : spectra[k])
      if (v >= 0.1 && v <= 1.9) worst = std::max(worst, nearest(spectra[k + 1], v));
    EXPECT_LT(worst, 5e-3) << "N=" << 10 + 2 * k << " -> " << 12 + 2 * k;
  }
}

TEST(KernelVector, MassFormulaAndBounds) {
  for (std::complex<double> p : {std::complex<double>(0.3, 0.4), std::complex<double>(-0.9, 0.0), {0.0, 0.7}}) {
    const double x = std::norm(p);
    for (int n : {0, 3, 20}) {
      double closed = 1 - std::pow(x, n + 1) * ((n + 2) - (n + 1) * x);
      EXPECT_NEAR(kernel_mass(p, n), closed, 1e-14);
      EXPECT_LE(kernel_mass(p, n), 1.0 + 1e-15);
    }
    EXPECT_NEAR(kernel_mass(p, 2000), 1.0, 1e-14);
    EXPECT_GE(kernel_mass(p, kernel_degree_for_mass(p, 0.99)), 0.99);
  }
  EXPECT_THROW(kernel_vector({1.0, 0.0}, 3), std::invalid_argument);
}

TEST(WeylResidual, FarFromSpectrum) {
  ExactPolySymbol psi = parse("zb1", 2);
  BasisTruncation t(2, 30);
  std::vector<std::complex<double>> g(31);
  g[0] = 1.0;
  // ||M|| = 1/2, so the residual exceeds (10 - 1/2) * ||f|| with ||f||^2 >= 0.99
  EXPECT_GT(weyl_residual(psi, 10.0, g, 0.5, t), 8.0);
}

TEST(WeylResidual, HolomorphicSymbolIsZero) {
  BasisTruncation t(2, 25);
  std::vector<std::complex<double>> g(26);
  g[0] = 0.6;
  g[3] = {0.0, 0.8};
  EXPECT_EQ(weyl_residual(parse("z1*z2 + z2^2"), 0.0, g, {0.2, -0.5}, t), 0.0);
}

TEST(WeylResidual, ZbarOneAtEigenvalueHalf) {
  ExactPolySymbol psi = parse("zb1", 2);
  std::vector<double> residuals;
  for (double p : {0.5, 0.7, 0.9}) {
    BasisTruncation t(2, kernel_degree_for_mass(p, 0.999));
    std::vector<std::complex<double>> g(t.degree_cap() + 1);
    g[0] = 1.0;
    residuals.push_back(weyl_residual(psi, 0.5, g, p, t));
  }
  for (double r : residuals) EXPECT_LT(r, 1e-12);
}

TEST(WeylResidual, DecreasesTowardsBoundaryForProductSymbol) {
  // psi = zbar_1 (zbar_2 + 1): with g = e_0 and lambda = 1/2 |1 + 1|^2 = 2 the residual
  // shrinks as p -> 1
  ExactPolySymbol psi = parse("zb1*(zb2+1)");
  std::vector<double> residuals;
  for (double p : {0.5, 0.7, 0.85}) {
    BasisTruncation t(2, kernel_degree_for_mass(p, 0.999));
    std::vector<std::complex<double>> g(t.degree_cap() + 1);
    g[0] = 1.0;
    residuals.push_back(weyl_residual(psi, 2.0, g, p, t));
  }
  for (std::size_t i = 1; i < residuals.size(); ++i) EXPECT_LT(residuals[i], residuals[i - 1]);
}

TEST(WeylResidual, Preconditions) {
  std::vector<std::complex<double>> g(4);
  g[0] = 1.0;
  EXPECT_THROW(weyl_residual(parse("zb1"), 0.5, g, 0.5, BasisTruncation(1, 3)), std::invalid_argument);
  // 99% of k_{0.9} needs a larger degree than 3
  EXPECT_THROW(weyl_residual(parse("zb1", 2), 0.5, g, 0.9, BasisTruncation(2, 3)), std::invalid_argument);
  EXPECT_THROW(weyl_residual(parse("zb1", 2), 0.5, std::span(g).first(2), 0.1, BasisTruncation(2, 3)),
               std::invalid_argument);
}
