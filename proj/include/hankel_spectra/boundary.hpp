#ifndef HANKEL_SPECTRA_BOUNDARY_HPP
#define HANKEL_SPECTRA_BOUNDARY_HPP

// Essential-spectrum predictions built from the boundary behaviour of psi:
// slice symbols psi_q = psi(., q) for q on the unit circle, the slice norms
// lambda_q = ||H_{psi_q}||^2, and the product sets {|chi(q)|^2 mu}.
//
// All slice norms come from finite sections, so they are lower bounds of the
// true norms that are non-decreasing in the truncation degree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "galerkin.hpp"
#include "parallel.hpp"
#include "poly_symbol.hpp"

namespace hankel_spectra {

/// psi with z_coord = q and zbar_coord = conj(q) substituted; lives on D^{dim-1}.
template <class Coeff>
FloatPolySymbol slice_symbol(const PolySymbol<Coeff>& sym, std::complex<double> q, std::size_t coord) {
  if (sym.dim() < 2) throw std::invalid_argument("slicing needs dim >= 2");
  if (coord >= sym.dim()) throw std::invalid_argument("slice coordinate out of range");
  if (std::abs(std::abs(q) - 1.0) > 1e-14) throw std::invalid_argument("slice point must lie on the unit circle");
  const std::size_t dim = sym.dim() - 1;
  FloatPolySymbol out(dim);
  for (const auto& [key, c] : sym.terms()) {
    std::complex<double> v = ScalarTraits<Coeff>::to_complex(c);
    v *= std::pow(q, key.holo[coord]) * std::pow(std::conj(q), key.antiholo[coord]);
    MultiIndex n(dim), m(dim);
    for (std::size_t k = 0, j = 0; k < sym.dim(); ++k) {
      if (k == coord) continue;
      n.set(j, key.holo[k]);
      m.set(j, key.antiholo[k]);
      ++j;
    }
    out.add_term(v, n, m);
  }
  // Drop cancellation residue (e.g. conj(q) + 1 at q = -1).
  FloatPolySymbol cleaned(dim);
  double scale = 0.0;
  for (const auto& [key, c] : out.terms()) scale = std::max(scale, std::abs(c));
  for (const auto& [key, c] : sym.terms()) scale = std::max(scale, std::abs(ScalarTraits<Coeff>::to_complex(c)));
  for (const auto& [key, c] : out.terms())
    if (std::abs(c) > 1e-14 * scale) cleaned.add_term(c, key.holo, key.antiholo);
  return cleaned;
}

/// Top eigenvalue of the compression of H*H at the given truncation (0 for the zero symbol).
inline double compression_norm_sq(const FloatPolySymbol& sym, const BasisTruncation& trunc) {
  if (sym.is_zero()) return 0.0;
  auto eig = eigenvalues(assemble(sym, trunc));
  return std::max(0.0, eig.back());
}

struct SliceSample {
  double theta = 0.0;
  double lambda_q = 0.0;
};

struct SliceNormProfile {
  std::size_t coord = 0;
  std::vector<SliceSample> samples;  // theta_j = 2 pi j / num_samples
  int degree_cap = 0;                // truncation of the slice compressions
  bool constant = false;             // max - min < constant_tolerance * max
  double relative_variation = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
};

inline constexpr double kConstantProfileTolerance = 1e-8;

/// lambda_q sampled at q = exp(2 pi i j / num_samples).
template <class Coeff>
SliceNormProfile slice_norm_profile(const PolySymbol<Coeff>& sym, std::size_t coord, std::size_t num_samples,
                                    const BasisTruncation& trunc) {
  if (num_samples < 4) throw std::invalid_argument("slice profile needs at least 4 samples");
  if (sym.dim() < 2) throw std::invalid_argument("slicing needs dim >= 2");
  require_same_dim(trunc.dim(), sym.dim() - 1, "slice truncation vs symbol");
  SliceNormProfile out;
  out.coord = coord;
  out.degree_cap = trunc.degree_cap();
  out.samples.resize(num_samples);
  parallel_for(num_samples, [&](std::size_t j) {
    double theta = 2.0 * std::numbers::pi * double(j) / double(num_samples);
    FloatPolySymbol slice = slice_symbol(sym, std::polar(1.0, theta), coord);
    out.samples[j] = {theta, compression_norm_sq(slice, trunc)};
  });
  auto [lo, hi] = std::minmax_element(out.samples.begin(), out.samples.end(),
                                      [](const SliceSample& a, const SliceSample& b) { return a.lambda_q < b.lambda_q; });
  out.min_value = lo->lambda_q;
  out.max_value = hi->lambda_q;
  out.relative_variation = out.max_value > 0.0 ? (out.max_value - out.min_value) / out.max_value : 0.0;
  out.constant = (out.max_value - out.min_value) <= kConstantProfileTolerance * out.max_value;
  return out;
}

/// Writes psi = phi(z') chi(z_coord) when the coefficient table indexed by
/// (exponents off coord, exponents on coord) has rank one. phi lives on D^{dim-1}, chi on D.
inline std::optional<std::pair<ExactPolySymbol, ExactPolySymbol>> factor_separated(const ExactPolySymbol& sym,
                                                                                 std::size_t coord) {
  if (sym.dim() < 2 || coord >= sym.dim()) throw std::invalid_argument("bad factorization coordinate");
  if (sym.is_zero()) return std::nullopt;
  using RowKey = std::pair<MultiIndex, MultiIndex>;
  using ColKey = std::pair<int, int>;
  std::map<RowKey, std::map<ColKey, ComplexRational>> table;
  for (const auto& [key, c] : sym.terms()) {
    std::vector<int> n, m;
    for (std::size_t k = 0; k < sym.dim(); ++k)
      if (k != coord) {
        n.push_back(key.holo[k]);
        m.push_back(key.antiholo[k]);
      }
    table[{MultiIndex(n), MultiIndex(m)}][{key.holo[coord], key.antiholo[coord]}] = c;
  }
  const auto& [row0, cols0] = *table.begin();
  const auto& [col0, pivot] = *cols0.begin();
  ExactPolySymbol phi(sym.dim() - 1), chi(1);
  for (const auto& [col, c] : cols0) chi.add_term(c / pivot, MultiIndex{col.first}, MultiIndex{col.second});
  for (const auto& [row, cols] : table) {
    auto it = cols.find(col0);
    if (it == cols.end()) return std::nullopt;
    phi.add_term(it->second, row.first, row.second);
    if (cols.size() != cols0.size()) return std::nullopt;
    for (const auto& [col, c] : cols) {
      auto ref = cols0.find(col);
      if (ref == cols0.end()) return std::nullopt;
      if (c * pivot != it->second * ref->second) return std::nullopt;
    }
  }
  return std::make_pair(std::move(phi), std::move(chi));
}

/// Range of |chi(e^{i theta})|^2 over the circle: grid search refined by golden section.
struct CircleRange {
  double min = 0.0;
  double max = 0.0;
  double argmin = 0.0;
  double argmax = 0.0;
};

template <class Coeff>
CircleRange modulus_sq_range(const PolySymbol<Coeff>& chi, std::size_t num_samples) {
  if (chi.dim() != 1) throw std::invalid_argument("chi must be univariate");
  if (num_samples < 4) throw std::invalid_argument("need at least 4 circle samples");
  auto g = [&](double theta) {
    std::complex<double> z = std::polar(1.0, theta);
    return std::norm(chi.evaluate(std::span<const std::complex<double>>(&z, 1)));
  };
  const double step = 2.0 * std::numbers::pi / double(num_samples);
  std::size_t imin = 0, imax = 0;
  std::vector<double> values(num_samples);
  for (std::size_t j = 0; j < num_samples; ++j) {
    values[j] = g(step * double(j));
    if (values[j] < values[imin]) imin = j;
    if (values[j] > values[imax]) imax = j;
  }
  auto golden = [&](double centre, double sign) {
    // minimises sign * g on [centre - step, centre + step]
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = centre - step, b = centre + step;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    double f1 = sign * g(x1), f2 = sign * g(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - ratio * (b - a);
        f1 = sign * g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + ratio * (b - a);
        f2 = sign * g(x2);
      }
    }
    double x = 0.5 * (a + b);
    return std::make_pair(x, g(x));
  };
  CircleRange r{values[imin], values[imax], step * double(imin), step * double(imax)};
  auto [xmin, vmin] = golden(r.argmin, 1.0);
  if (vmin < r.min) r = {vmin, r.max, xmin, r.argmax};
  auto [xmax, vmax] = golden(r.argmax, -1.0);
  if (vmax > r.max) {
    r.max = vmax;
    r.argmax = xmax;
  }
  r.min = std::max(0.0, r.min);
  return r;
}

struct PredictedPoint {
  double value = 0.0;
  std::string provenance;
  bool approximate = false;
};

struct PredictedInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::string provenance;
  bool approximate = false;
};

struct EssentialSetPrediction {
  std::vector<PredictedPoint> points;
  std::vector<PredictedInterval> intervals;

  bool empty() const { return points.empty() && intervals.empty(); }

  /// Union of the predicted intervals covers [lo, hi] (up to tol at the joins).
  bool contains_interval(double lo, double hi, double tol = 1e-9) const {
    std::vector<std::pair<double, double>> iv;
    for (const auto& i : intervals) iv.emplace_back(i.lo, i.hi);
    std::sort(iv.begin(), iv.end());
    double reach = lo;
    for (const auto& [a, b] : iv) {
      if (a > reach + tol) break;
      reach = std::max(reach, b);
      if (reach >= hi - tol) return true;
    }
    return false;
  }
  bool contains_point(double v, double tol) const {
    for (const auto& p : points)
      if (std::abs(p.value - v) <= tol) return true;
    for (const auto& i : intervals)
      if (v >= i.lo - tol && v <= i.hi + tol) return true;
    return false;
  }
};

struct PredictionConfig {
  int alpha_cap = 10;             // exact-engine enumeration bound for monomial factors
  int degree_cap = 12;            // Galerkin truncation for non-monomial factors
  double dedup_tolerance = 1e-12;
  double interval_tolerance = 1e-12;  // ranges narrower than this (relative) collapse to points
};

struct SpectrumSource {
  std::vector<double> values;  // ascending, deduplicated
  std::vector<std::string> exact_text;  // "num/den" per value when exact
  bool approximate = false;
  std::string label;
};

/// sigma(H*_phi H_phi): exact enumeration when phi is c * monomial, else compression eigenvalues.
inline SpectrumSource factor_spectrum(const ExactPolySymbol& phi, const PredictionConfig& cfg) {
  SpectrumSource out;
  if (auto mono = phi.as_monomial()) {
    const auto& [sym, c] = *mono;
    ExactScalar scale = norm_sq(c);
    for (const auto& v : enumerate_spectrum(sym, cfg.alpha_cap).values()) {
      ExactScalar s = v * scale;
      s.canonicalize();
      out.values.push_back(s.get_d());
      out.exact_text.push_back(to_fraction_string(s));
    }
    out.label = "exact (alpha_cap=" + std::to_string(cfg.alpha_cap) + ")";
    return out;  // already ascending and distinct
  } else if (phi.is_zero()) {
    out.values = {0.0};
    out.exact_text = {"0"};
    out.label = "exact (zero symbol)";
    return out;
  } else {
    out.values = eigenvalues(assemble(phi, BasisTruncation(phi.dim(), cfg.degree_cap)));
    out.approximate = true;
    out.label = "compression (N=" + std::to_string(cfg.degree_cap) + ")";
  }
  std::sort(out.values.begin(), out.values.end());
  std::vector<double> dedup;
  for (double v : out.values) {
    v = std::abs(v) < cfg.dedup_tolerance ? 0.0 : v;
    if (dedup.empty() || v - dedup.back() > cfg.dedup_tolerance) dedup.push_back(v);
  }
  out.values = std::move(dedup);
  return out;
}

namespace detail {

inline void add_scaled(EssentialSetPrediction& pred, const SpectrumSource& mu, double lo, double hi,
                       const std::string& origin, const PredictionConfig& cfg) {
  for (std::size_t i = 0; i < mu.values.size(); ++i) {
    const double m = mu.values[i];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", m);
    std::string prov = origin + ": mu=" + (mu.exact_text.empty() ? std::string(buf) : mu.exact_text[i]) + " from " + mu.label;
    if (m == 0.0) {
      if (!pred.contains_point(0.0, cfg.dedup_tolerance)) pred.points.push_back({0.0, prov, mu.approximate});
    } else if (hi - lo > cfg.interval_tolerance * std::max(1.0, hi)) {
      pred.intervals.push_back({m * lo, m * hi, prov, mu.approximate});
    } else {
      double v = m * 0.5 * (lo + hi);
      bool seen = std::any_of(pred.points.begin(), pred.points.end(),
                              [&](const PredictedPoint& p) { return std::abs(p.value - v) <= cfg.dedup_tolerance; });
      if (!seen) pred.points.push_back({v, prov, mu.approximate});
    }
  }
  std::sort(pred.points.begin(), pred.points.end(),
            [](const PredictedPoint& a, const PredictedPoint& b) { return a.value < b.value; });
  std::sort(pred.intervals.begin(), pred.intervals.end(),
            [](const PredictedInterval& a, const PredictedInterval& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
}

}  // namespace detail

/// {|chi(q)|^2 mu : q on the circle, mu in sigma(H*_phi H_phi)}; each mu > 0 sweeps the
/// closed interval [mu min|chi|^2, mu max|chi|^2].
inline EssentialSetPrediction product_essential_prediction(const ExactPolySymbol& phi, const ExactPolySymbol& chi,
                                                           std::size_t num_samples, const PredictionConfig& cfg = {}) {
  if (chi.dim() != 1) throw std::invalid_argument("chi must be univariate");
  if (phi.dim() < 1) throw std::invalid_argument("phi needs dim >= 1");
  EssentialSetPrediction pred;
  const SpectrumSource mu = factor_spectrum(phi, cfg);
  const CircleRange range = modulus_sq_range(chi, num_samples);
  detail::add_scaled(pred, mu, range.min, range.max, "product", cfg);
  return pred;
}

/// Union over j of mu_j prod_{k != j} |chi_k(q_k)|^2 for psi = chi_1(z_1) ... chi_n(z_n).
inline EssentialSetPrediction separable_essential_prediction(const std::vector<ExactPolySymbol>& factors,
                                                             std::size_t num_samples,
                                                             const PredictionConfig& cfg = {}) {
  if (factors.size() < 2) throw std::invalid_argument("separable prediction needs at least two factors");
  std::vector<CircleRange> ranges;
  for (const auto& f : factors) ranges.push_back(modulus_sq_range(f, num_samples));
  EssentialSetPrediction pred;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    double lo = 1.0, hi = 1.0;
    for (std::size_t k = 0; k < factors.size(); ++k)
      if (k != j) {
        lo *= ranges[k].min;
        hi *= ranges[k].max;
      }
    detail::add_scaled(pred, factor_spectrum(factors[j], cfg), lo, hi, "separable factor " + std::to_string(j + 1),
                       cfg);
  }
  return pred;
}

/// The slice-norm image {lambda_q}: an interval when the profile is non-constant.
inline EssentialSetPrediction slice_norm_prediction(const SliceNormProfile& profile) {
  EssentialSetPrediction pred;
  std::string prov = "slice norms, coord " + std::to_string(profile.coord + 1) +
                     " (N=" + std::to_string(profile.degree_cap) + ")";
  if (profile.constant)
    pred.points.push_back({profile.max_value, prov, true});
  else
    pred.intervals.push_back({profile.min_value, profile.max_value, prov, true});
  return pred;
}

struct CompressionSpectrum {
  int degree_cap = 0;
  std::vector<double> eigenvalues;  // ascending
};

/// Largest distance between consecutive eigenvalues lying in [lo, hi]; the window
/// width when fewer than two eigenvalues fall inside.
inline double max_gap_in_window(const std::vector<double>& eigenvalues, double lo, double hi) {
  std::vector<double> inside;
  for (double v : eigenvalues)
    if (v >= lo && v <= hi) inside.push_back(v);
  std::sort(inside.begin(), inside.end());
  if (inside.size() < 2) return hi - lo;
  double gap = 0.0;
  for (std::size_t i = 1; i < inside.size(); ++i) gap = std::max(gap, inside[i] - inside[i - 1]);
  return gap;
}

struct PointReport {
  double value = 0.0;
  double nearest = 0.0;
  double distance = 0.0;
  bool within_tolerance = false;
};

struct GapReport {
  double lo = 0.0;
  double hi = 0.0;
  int degree_cap = 0;
  std::size_t count_inside = 0;
  double max_gap = 0.0;
};

struct ContainmentReport {
  std::vector<PointReport> points;  // against the largest truncation
  std::vector<GapReport> gaps;      // one per (interval, truncation)
  double tolerance = 0.0;

  bool empty() const { return points.empty() && gaps.empty(); }
};

inline ContainmentReport containment_report(const EssentialSetPrediction& prediction,
                                            std::vector<CompressionSpectrum> spectra, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("containment tolerance must be positive");
  ContainmentReport report;
  report.tolerance = tol;
  if (prediction.empty() || spectra.empty()) return report;
  std::sort(spectra.begin(), spectra.end(),
            [](const CompressionSpectrum& a, const CompressionSpectrum& b) { return a.degree_cap < b.degree_cap; });
  const auto& finest = spectra.back().eigenvalues;
  for (const auto& p : prediction.points) {
    PointReport r{p.value, 0.0, std::numeric_limits<double>::infinity(), false};
    for (double v : finest)
      if (std::abs(v - p.value) < r.distance) {
        r.distance = std::abs(v - p.value);
        r.nearest = v;
      }
    r.within_tolerance = r.distance <= tol;
    report.points.push_back(r);
  }
  for (const auto& iv : prediction.intervals)
    for (const auto& s : spectra) {
      GapReport g{iv.lo, iv.hi, s.degree_cap, 0, max_gap_in_window(s.eigenvalues, iv.lo, iv.hi)};
      g.count_inside = std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                     [&](double v) { return v >= iv.lo && v <= iv.hi; });
      report.gaps.push_back(g);
    }
  return report;
}

/// max |psi| over a polar grid of the closed polydisc (dim <= 2).
template <class Coeff>
double sup_norm_on_grid(const PolySymbol<Coeff>& sym, int radial_steps = 16, int angle_steps = 64) {
  if (sym.dim() > 2) throw std::invalid_argument("grid sup-norm supports dim <= 2");
  std::vector<std::complex<double>> pts;
  for (int i = 0; i <= radial_steps; ++i)
    for (int j = 0; j < angle_steps; ++j)
      pts.push_back(std::polar(double(i) / radial_steps, 2.0 * std::numbers::pi * j / angle_steps));
  double best = 0.0;
  if (sym.dim() <= 1) {
    for (const auto& z : pts) best = std::max(best, std::abs(sym.evaluate(std::span<const std::complex<double>>(&z, 1))));
    return best;
  }
  std::complex<double> z[2];
  for (const auto& a : pts)
    for (const auto& b : pts) {
      z[0] = a;
      z[1] = b;
      best = std::max(best, std::abs(sym.evaluate(z)));
    }
  return best;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_BOUNDARY_HPP
