#ifndef HANKEL_SPECTRA_COMMANDS_HPP
#define HANKEL_SPECTRA_COMMANDS_HPP

// Subcommand bodies behind the hankel-spectra executable. Each returns an exit
// code (0 ok, 1 verification failure, 2 usage error) and the rendered output, so
// tests can drive them without a process boundary.

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "core.hpp"
#include "galerkin.hpp"
#include "io.hpp"
#include "quasihomogeneous.hpp"
#include "symbol_parser.hpp"

namespace hankel_spectra {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  int alpha_cap = 10;
  std::vector<int> degree_caps = {12};
  std::size_t forced_dim = 0;
  std::size_t coord = 0;  // 1-based; 0 selects the last coordinate
  std::size_t quadrature_nodes = 64;
  std::size_t samples = 256;
  double tolerance = 1e-9;
  bool force_float = false;
  OutputFormat format = OutputFormat::Json;
  std::vector<std::string> suites;  // empty: every default suite
  std::string fixtures_path;
  std::string matrix_path;
  std::string dump_path;
  std::string profile;  // quasi-homogeneous profile JSON for `exact`
};

struct CommandResult {
  int exit_code = 0;
  std::string output;
  std::string message;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void validate(const RunConfig& cfg) {
  if (cfg.alpha_cap <= 0) throw UsageError("--cap must be positive");
  if (cfg.degree_caps.empty()) throw UsageError("--degree needs at least one value");
  for (int n : cfg.degree_caps)
    if (n <= 0) throw UsageError("--degree values must be positive");
  if (cfg.quadrature_nodes == 0) throw UsageError("--nodes must be positive");
  if (cfg.samples < 4) throw UsageError("--samples must be at least 4");
  if (!(cfg.tolerance > 0.0 && cfg.tolerance < 1.0)) throw UsageError("--tol must lie in (0, 1)");
  if (cfg.forced_dim > kDefaultMaxDim) throw UsageError("--dim must be at most 8");
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

template <class Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    return {2, "", e.what()};
  } catch (const ParseError& e) {
    return {2, "", e.what()};
  } catch (const SizeGuardError& e) {
    return {2, "", std::string("size guard: ") + e.what()};
  } catch (const std::invalid_argument& e) {
    return {2, "", e.what()};
  }
}

inline std::vector<std::string> spectrum_strings(const SpectrumSet& s) {
  std::vector<std::string> out;
  for (const auto& r : s.records) out.push_back(to_fraction_string(r.value));
  return out;
}

inline void scale_values(SpectrumSet& s, const ExactScalar& factor) {
  if (factor == 1) return;
  for (auto& r : s.records) {
    r.value *= factor;
    r.value.canonicalize();
  }
}

}  // namespace detail

/// Closed-form spectrum of a single-monomial symbol c z^n zbar^m (values scale by |c|^2),
/// or of a quasi-homogeneous profile when cfg.profile is set.
inline CommandResult cmd_exact(const std::string& spec, const RunConfig& cfg) {
  return detail::guarded([&]() -> CommandResult {
    validate(cfg);
    if (!cfg.profile.empty()) {
      QuasiHomogeneousSymbol sym = parse_profile(cfg.profile);
      QuadratureConfig q;
      q.nodes = cfg.quadrature_nodes;
      q.force_float = cfg.force_float;
      QhSpectrum s = qh_spectrum(sym, cfg.alpha_cap, q);
      if (cfg.format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "value,exact,alpha,branch,in_cluster\n";
        for (const auto& e : s.entries)
          os << format_double(e.eigenvalue.value) << ','
             << (e.eigenvalue.exact ? to_fraction_string(*e.eigenvalue.exact) : "") << ','
             << csv_field(e.eigenvalue.alpha.to_string()) << ',' << to_string(e.eigenvalue.branch) << ','
             << (e.in_cluster ? "true" : "false") << '\n';
        return {0, os.str(), ""};
      }
      Json out = {{"command", "exact"}, {"mode", "quasi-homogeneous"}, {"dim", sym.dim()}};
      out["spectrum"] = to_json(s);
      return {0, render(out), ""};
    }

    ExactPolySymbol poly = parse_symbol(spec, cfg.forced_dim);
    MonomialSymbol sym;
    ExactScalar scale(1);
    if (poly.is_zero()) {
      sym = MonomialSymbol(MultiIndex(poly.dim()), MultiIndex(poly.dim()));
      scale = 0;
    } else if (auto mono = poly.as_monomial()) {
      sym = mono->first;
      scale = norm_sq(mono->second);
    } else {
      throw UsageError("symbol is not a single monomial; use `approx` for general polynomial symbols");
    }
    SpectrumSet spectrum = enumerate_spectrum(sym, cfg.alpha_cap);
    classify_essential(spectrum, sym);
    SpectrumSet essential = enumerate_essential_spectrum(sym, cfg.alpha_cap);
    spectrum.warning = essential.warning;
    detail::scale_values(spectrum, scale);
    detail::scale_values(essential, scale);
    if (cfg.format == OutputFormat::Csv) return {0, to_csv(spectrum), ""};

    Json out = {{"command", "exact"},
                {"symbol", serialize_symbol(poly)},
                {"dim", sym.dim()},
                {"holo", to_vector(sym.holo)},
                {"antiholo", to_vector(sym.antiholo)},
                {"coefficient_modulus_sq", to_fraction_string(scale)},
                {"multiplicity_class", to_string(multiplicity_class(sym))}};
    out["spectrum"] = to_json(spectrum);
    out["essential_spectrum"] = detail::spectrum_strings(essential);
    return {0, render(out), essential.warning ? *essential.warning : ""};
  });
}

inline CompressionMatrix assemble_for(const ExactPolySymbol& poly, const BasisTruncation& trunc, bool force_float) {
  if (force_float) return assemble(poly.convert<std::complex<double>>(), trunc);
  return assemble(poly, trunc);
}

/// Finite-section eigenvalues of H*_psi H_psi at one degree cap.
inline CommandResult cmd_approx(const std::string& spec, const RunConfig& cfg) {
  return detail::guarded([&]() -> CommandResult {
    validate(cfg);
    if (cfg.degree_caps.size() != 1) throw UsageError("approx takes a single --degree value");
    ExactPolySymbol poly = parse_symbol(spec, cfg.forced_dim);
    BasisTruncation trunc(poly.dim(), cfg.degree_caps.front());
    CompressionMatrix mat = assemble_for(poly, trunc, cfg.force_float);
    std::vector<double> eig = eigenvalues(mat);
    if (!cfg.dump_path.empty()) {
      std::ofstream os(cfg.dump_path);
      if (!os) throw UsageError("cannot write matrix dump to " + cfg.dump_path);
      write_matrix_dump(os, mat);
    }
    if (cfg.format == OutputFormat::Csv) {
      std::ostringstream os;
      os << "index,eigenvalue,degree_cap,basis_size,exactness\n";
      for (std::size_t i = 0; i < eig.size(); ++i)
        os << i << ',' << format_double(eig[i]) << ',' << trunc.degree_cap() << ',' << trunc.size() << ','
           << to_string(mat.exactness) << '\n';
      return {0, os.str(), ""};
    }
    Json out = {{"command", "approx"},
                {"symbol", serialize_symbol(poly)},
                {"dim", poly.dim()},
                {"degree_cap", trunc.degree_cap()},
                {"inner_cap", mat.inner_cap},
                {"basis_size", trunc.size()},
                {"exactness", to_string(mat.exactness)},
                {"symbol_hash", hash_hex(mat.symbol_hash)},
                {"hermitian_defect", mat.hermitian_defect()},
                {"eigenvalues", eig}};
    return {0, render(out), ""};
  });
}

struct BoundaryAnalysis {
  SliceNormProfile profile;
  EssentialSetPrediction prediction;
  std::vector<CompressionSpectrum> spectra;
  ContainmentReport report;
  bool separated = false;
};

/// Slice-norm profile, essential-set prediction and containment evidence.
inline BoundaryAnalysis analyse_boundary(const ExactPolySymbol& poly, std::size_t coord, const RunConfig& cfg) {
  if (poly.dim() < 2) throw UsageError("boundary analysis needs dim >= 2");
  if (coord >= poly.dim()) throw UsageError("--coord out of range");
  std::vector<int> degrees = cfg.degree_caps;
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  const int top = degrees.back();

  BoundaryAnalysis out;
  out.profile = slice_norm_profile(poly, coord, cfg.samples, BasisTruncation(poly.dim() - 1, top));
  PredictionConfig pc;
  pc.alpha_cap = cfg.alpha_cap;
  pc.degree_cap = top;
  if (auto parts = factor_separated(poly, coord)) {
    out.separated = true;
    out.prediction = product_essential_prediction(parts->first, parts->second, cfg.samples, pc);
  }
  EssentialSetPrediction slices = slice_norm_prediction(out.profile);
  out.prediction.points.insert(out.prediction.points.end(), slices.points.begin(), slices.points.end());
  out.prediction.intervals.insert(out.prediction.intervals.end(), slices.intervals.begin(), slices.intervals.end());
  for (int n : degrees) {
    BasisTruncation trunc(poly.dim(), n);
    out.spectra.push_back({n, eigenvalues(assemble_for(poly, trunc, cfg.force_float))});
  }
  out.report = containment_report(out.prediction, out.spectra, cfg.tolerance);
  return out;
}

inline CommandResult cmd_boundary(const std::string& spec, const RunConfig& cfg) {
  return detail::guarded([&]() -> CommandResult {
    validate(cfg);
    ExactPolySymbol poly = parse_symbol(spec, cfg.forced_dim);
    if (poly.dim() < 2) throw UsageError("boundary analysis needs dim >= 2 (use --dim to embed the symbol)");
    std::size_t coord = cfg.coord == 0 ? poly.dim() - 1 : cfg.coord - 1;
    BoundaryAnalysis a = analyse_boundary(poly, coord, cfg);
    if (cfg.format == OutputFormat::Csv) {
      std::ostringstream os;
      os << "kind,theta_or_N,value,provenance\n";
      for (const auto& s : a.profile.samples)
        os << "slice_norm," << format_double(s.theta) << ',' << format_double(s.lambda_q) << ",coord "
           << coord + 1 << '\n';
      for (const auto& s : a.spectra)
        for (double v : s.eigenvalues) os << "eigenvalue," << s.degree_cap << ',' << format_double(v) << ",compression\n";
      return {0, os.str(), ""};
    }
    Json gaps = Json::array();
    for (const auto& g : a.report.gaps)
      gaps.push_back({{"interval", {g.lo, g.hi}}, {"max_gap", g.max_gap}, {"at_N", g.degree_cap}});
    Json out = {{"command", "boundary"},
                {"symbol", serialize_symbol(poly)},
                {"dim", poly.dim()},
                {"coord", coord + 1},
                {"samples", cfg.samples},
                {"separated", a.separated},
                {"constant", a.profile.constant}};
    out["profile"] = to_json(a.profile);
    out["prediction"] = to_json(a.prediction);
    out["compression"] = {{"N", a.spectra.back().degree_cap}, {"eigenvalues", a.spectra.back().eigenvalues}};
    out["gaps"] = gaps;
    out["containment"] = to_json(a.report);
    return {0, render(out), ""};
  });
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 50) failures.push_back(what);
  }
};

inline const char* kDefaultFixtures = R"fixtures([
  {"engine": "core", "symbol": "zb1", "dim": 1, "alpha": [0], "B": [1], "value": "1/2"},
  {"engine": "core", "symbol": "zb1", "dim": 1, "alpha": [1], "B": [1], "value": "1/6"},
  {"engine": "core", "symbol": "zb1^2", "dim": 1, "alpha": [2], "B": [1], "value": "4/15"},
  {"engine": "core", "symbol": "zb1*zb2", "dim": 2, "alpha": [0, 0], "B": [1, 2], "value": "1/4"},
  {"engine": "core", "symbol": "z1*zb1", "dim": 1, "alpha": [0], "B": [1], "value": "1/12"},
  {"engine": "exact", "symbol": "zb1*zb2", "cap": 1, "contains": "1/4"},
  {"engine": "galerkin", "symbol": "zb1*(zb2+1)", "N": 2, "alpha": [0, 0], "value": "3/4"},
  {"engine": "qh", "profile": {"factors": [["0", "0", "1"]], "winding": [0]}, "alpha": [0], "value": "1/12"}
])fixtures";

inline SuiteResult suite_fixtures(const RunConfig& cfg) {
  SuiteResult r;
  r.name = "fixtures";
  std::string text = kDefaultFixtures;
  if (!cfg.fixtures_path.empty()) {
    std::ifstream in(cfg.fixtures_path);
    if (!in) throw UsageError("cannot read fixtures file " + cfg.fixtures_path);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    r.check(false, std::string("fixtures file is not valid JSON: ") + e.what());
    return r;
  }
  if (!doc.is_array()) {
    r.check(false, "fixtures file must hold an array");
    return r;
  }
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& f = doc[i];
    const std::string tag = "fixture " + std::to_string(i);
    try {
      const std::string engine = f.at("engine").get<std::string>();
      auto multi = [](const nlohmann::json& v) { return MultiIndex(v.get<std::vector<int>>()); };
      if (engine == "core") {
        ExactPolySymbol p = parse_symbol(f.at("symbol").get<std::string>(), f.value("dim", 0));
        auto mono = p.as_monomial();
        if (!mono) throw std::invalid_argument("core fixture needs a monomial");
        std::vector<std::size_t> members;
        for (int b : f.at("B").get<std::vector<int>>()) members.push_back(std::size_t(b - 1));
        ExactScalar got = lambda_value(mono->first, multi(f.at("alpha")), SubsetB(members, p.dim()));
        ExactScalar want = parse_rational(f.at("value").get<std::string>());
        r.check(got == want, tag + " (core): got " + to_fraction_string(got) + ", expected " + to_fraction_string(want));
      } else if (engine == "exact") {
        RunConfig c = cfg;
        c.alpha_cap = f.at("cap").get<int>();
        c.format = OutputFormat::Json;
        c.profile.clear();
        CommandResult res = cmd_exact(f.at("symbol").get<std::string>(), c);
        bool found = false;
        if (res.exit_code == 0) {
          auto j = nlohmann::json::parse(res.output);
          for (const auto& rec : j.at("spectrum").at("records"))
            if (rec.at("value").get<std::string>() == f.at("contains").get<std::string>()) found = true;
        }
        r.check(found, tag + " (exact): value " + f.at("contains").get<std::string>() + " missing");
      } else if (engine == "galerkin") {
        ExactPolySymbol p = parse_symbol(f.at("symbol").get<std::string>(), f.value("dim", 0));
        BasisTruncation trunc(p.dim(), f.at("N").get<int>());
        CompressionMatrix m = assemble(p, trunc);
        auto idx = trunc.index_of(multi(f.at("alpha")));
        if (!idx) throw std::invalid_argument("alpha outside the truncation");
        ExactScalar got = m.exact_diagonal(*idx);
        ExactScalar want = parse_rational(f.at("value").get<std::string>());
        r.check(got == want,
                tag + " (galerkin): got " + to_fraction_string(got) + ", expected " + to_fraction_string(want));
      } else if (engine == "qh") {
        QuasiHomogeneousSymbol s = parse_profile(f.at("profile").dump());
        QhEigenvalue e = qh_eigenvalue(s, multi(f.at("alpha")));
        ExactScalar want = parse_rational(f.at("value").get<std::string>());
        r.check(e.exact && *e.exact == want, tag + " (qh): got " + format_double(e.value) + ", expected " +
                                                 to_fraction_string(want));
      } else {
        r.check(false, tag + ": unknown engine " + engine);
      }
    } catch (const std::exception& e) {
      r.check(false, tag + ": " + e.what());
    }
  }
  return r;
}

/// Core lambda, quasi-homogeneous rational and float paths, and the Galerkin
/// diagonal on every monomial with entries <= 3 in dim <= 2, alpha <= (4, 4).
inline SuiteResult suite_engines_agree(const RunConfig&) {
  SuiteResult r;
  r.name = "engines-agree";
  QuadratureConfig exact_cfg, float_cfg;
  float_cfg.force_float = true;
  for (std::size_t dim = 1; dim <= 2; ++dim) {
    const auto exps = graded_lex_box(dim, 3);
    for (const auto& n : exps)
      for (const auto& m : exps) {
        MonomialSymbol sym(n, m);
        const std::string name = "n=" + n.to_string() + " m=" + m.to_string();
        QuasiHomogeneousSymbol qh = QuasiHomogeneousSymbol::from_monomial(sym);
        BasisTruncation trunc(dim, 4);
        CompressionMatrix mat = assemble(ExactPolySymbol::from_monomial(sym), trunc);
        r.check(mat.exactly_diagonal(), name + ": compression of a monomial symbol is not diagonal");
        for (std::size_t i = 0; i < trunc.size(); ++i) {
          const MultiIndex& alpha = trunc[i];
          ExactScalar core = lambda_value(sym, alpha, SubsetB::full(dim));
          QhEigenvalue qe = qh_eigenvalue(qh, alpha, exact_cfg);
          QhEigenvalue qf = qh_eigenvalue(qh, alpha, float_cfg);
          ExactScalar diag = mat.exact_diagonal(i);
          const std::string at = name + " alpha=" + alpha.to_string();
          r.check(qe.exact && *qe.exact == core, at + ": quasi-homogeneous rational path differs from core");
          r.check(diag == core, at + ": Galerkin diagonal " + to_fraction_string(diag) + " differs from core " +
                                    to_fraction_string(core));
          r.check(std::abs(qf.value - core.get_d()) <= 1e-12, at + ": quadrature path off by more than 1e-12");
        }
      }
  }
  return r;
}

/// Hankel-gram assembly against T_{|psi|^2} - T_{conj psi} T_psi, exact entrywise.
inline SuiteResult suite_toeplitz_identity(const RunConfig&) {
  SuiteResult r;
  r.name = "toeplitz-identity";
  for (const char* text : {"zb1", "zb1*zb2", "zb1*(zb2+1)"}) {
    ExactPolySymbol p = parse_symbol(text, 2);
    BasisTruncation trunc(2, 6);
    CompressionMatrix direct = assemble(p, trunc);
    auto via = assemble_via_toeplitz(p, trunc, required_inner_cap(p, trunc.degree_cap()));
    std::size_t mismatches = 0;
    for (std::size_t k = 0; k < via.size(); ++k)
      if (via[k] != direct.exact_gram[k]) ++mismatches;
    r.check(mismatches == 0, std::string(text) + ": " + std::to_string(mismatches) + " entries differ");
    r.check(direct.exactly_hermitian(), std::string(text) + ": exact gram is not Hermitian");
  }
  return r;
}

namespace detail {

/// {0} plus lambda over all alpha in the box and the given subsets, straight from the formula.
inline std::set<ExactScalar, RationalLess> brute_force_values(const MonomialSymbol& sym, int cap, bool proper_only,
                                                              bool full_only) {
  std::set<ExactScalar, RationalLess> out{ExactScalar(0)};
  const std::size_t dim = sym.dim();
  for (const MultiIndex& alpha : graded_lex_box(dim, cap))
    for (std::uint32_t mask = 1; mask < (1u << dim); ++mask) {
      SubsetB b = SubsetB::from_mask(mask, dim);
      if (proper_only && b.is_full(dim)) continue;
      if (full_only && !b.is_full(dim)) continue;
      out.insert(lambda_value(sym, alpha, b));
    }
  return out;
}

inline std::set<ExactScalar, RationalLess> as_set(const SpectrumSet& s) {
  std::set<ExactScalar, RationalLess> out;
  for (const auto& r : s.records) out.insert(r.value);
  return out;
}

}  // namespace detail

/// Essential-spectrum classification against brute-force sets.
inline SuiteResult suite_essential(const RunConfig&) {
  SuiteResult r;
  r.name = "essential";
  MonomialSymbol single(MultiIndex{0, 0}, MultiIndex{1, 0});
  for (int cap = 1; cap <= 6; ++cap) {
    auto sigma = detail::as_set(enumerate_spectrum(single, cap));
    auto ess = detail::as_set(enumerate_essential_spectrum(single, cap));
    r.check(sigma == ess, "zb1 on D^2: essential spectrum differs from spectrum at cap " + std::to_string(cap));
    r.check(sigma == detail::brute_force_values(single, cap, false, false),
            "zb1 on D^2: spectrum differs from brute force at cap " + std::to_string(cap));
  }
  MonomialSymbol product(MultiIndex{0, 0}, MultiIndex{1, 1});
  const int cap = 6;
  auto sigma = detail::as_set(enumerate_spectrum(product, cap));
  auto ess = detail::as_set(enumerate_essential_spectrum(product, cap));
  auto proper = detail::brute_force_values(product, cap, true, false);
  auto full = detail::brute_force_values(product, cap, false, true);
  r.check(ess == proper, "zb1*zb2: essential spectrum differs from {0} plus proper-subset values");
  std::set<ExactScalar, detail::RationalLess> excluded, expected;
  for (const auto& v : sigma)
    if (!ess.count(v)) excluded.insert(v);
  for (const auto& v : full)
    if (!proper.count(v)) expected.insert(v);
  r.check(excluded == expected, "zb1*zb2: excluded values are not the full-set-only values");
  r.check(!expected.empty(), "zb1*zb2: expected some full-set-only values");
  return r;
}

/// Hermitian defect, eigenvalue positivity, quadrature-doubling stability.
inline SuiteResult suite_hygiene(const RunConfig&) {
  SuiteResult r;
  r.name = "hygiene";
  struct Case {
    const char* text;
    std::size_t dim;
    int degree;
  };
  for (const Case& c : {Case{"zb1*(zb2+1)", 2, 8}, Case{"zb1*zb2 + zb1", 2, 6}, Case{"z1*zb2^2 - 1/3*i*zb1", 2, 5},
                        Case{"zb1^2 + i*z1", 1, 20}}) {
    ExactPolySymbol p = parse_symbol(c.text, c.dim);
    for (bool as_float : {false, true}) {
      CompressionMatrix m = assemble_for(p, BasisTruncation(c.dim, c.degree), as_float);
      const std::string tag = std::string(c.text) + (as_float ? " (float)" : " (rational)");
      r.check(m.hermitian_defect() <= 1e-13, tag + ": Hermitian defect " + format_double(m.hermitian_defect()));
      auto eig = eigenvalues(m);
      r.check(eig.front() >= -1e-10, tag + ": eigenvalue " + format_double(eig.front()) + " below -1e-10");
    }
  }
  // polynomial profiles of degree <= 20
  std::vector<QuasiHomogeneousSymbol> profiles;
  {
    RationalPoly f(21, ExactScalar(0));
    f[0] = 1;
    f[7] = ExactScalar(-1, 3);
    f[20] = 1;
    profiles.emplace_back(RadialProfile::separable({f}), Winding{1});
    RationalPoly g = {ExactScalar(1, 2), ExactScalar(0), ExactScalar(2)};
    profiles.emplace_back(RadialProfile::separable({g, f}), Winding{-2, 1});
    profiles.emplace_back(RadialProfile::separable({radial_power(3), radial_power(1)}), Winding{-1, -1});
  }
  QuadratureConfig q64, q128;
  q64.force_float = q128.force_float = true;
  q64.nodes = 64;
  q128.nodes = 128;
  for (std::size_t s = 0; s < profiles.size(); ++s)
    for (const MultiIndex& alpha : graded_lex_box(profiles[s].dim(), 6)) {
      double a = qh_eigenvalue(profiles[s], alpha, q64).value;
      double b = qh_eigenvalue(profiles[s], alpha, q128).value;
      r.check(std::abs(a - b) < 1e-10, "profile " + std::to_string(s) + " alpha=" + alpha.to_string() +
                                           ": node doubling moved the eigenvalue by " + format_double(std::abs(a - b)));
      r.check(a >= -1e-12, "profile " + std::to_string(s) + " alpha=" + alpha.to_string() + ": negative eigenvalue");
    }
  return r;
}

/// Re-reads a matrix dump; checks Hermitian structure and, given a symbol, equality with a fresh assembly.
inline SuiteResult suite_matrix(const RunConfig& cfg, const std::string& spec) {
  SuiteResult r;
  r.name = "matrix";
  std::ifstream in(cfg.matrix_path);
  if (!in) throw UsageError("cannot read matrix dump " + cfg.matrix_path);
  MatrixDump d;
  try {
    d = read_matrix_dump(in);
  } catch (const std::exception& e) {
    r.check(false, e.what());
    return r;
  }
  const std::size_t n = d.size;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (d.exactness == Exactness::ExactRational)
        r.check(d.gram[i * n + j] == conj(d.gram[j * n + i]),
                "entry (" + std::to_string(i) + "," + std::to_string(j) + ") breaks exact Hermitian symmetry");
      else
        r.check(std::abs(d.entries[i * n + j] - std::conj(d.entries[j * n + i])) <= 1e-13,
                "entry (" + std::to_string(i) + "," + std::to_string(j) + ") breaks Hermitian symmetry");
    }
  if (!spec.empty()) {
    ExactPolySymbol p = parse_symbol(spec, d.dim);
    CompressionMatrix m = assemble_for(p, BasisTruncation(d.dim, d.degree_cap), d.exactness == Exactness::Float);
    r.check(hash_hex(m.symbol_hash) == d.hash, "symbol hash differs from the dump header");
    r.check(m.size() == n, "basis size differs from the dump header");
    if (m.size() == n)
      for (std::size_t k = 0; k < n * n; ++k) {
        bool same = d.exactness == Exactness::ExactRational ? m.exact_gram[k] == d.gram[k]
                                                            : std::abs(m.entries[k] - d.entries[k]) <= 1e-13;
        r.check(same, "entry " + std::to_string(k) + " differs from a fresh assembly");
      }
  }
  return r;
}

inline const std::vector<std::string>& default_suites() {
  static const std::vector<std::string> names = {"fixtures", "engines-agree", "toeplitz-identity", "essential",
                                                 "hygiene"};
  return names;
}

inline CommandResult cmd_verify(const std::string& spec, const RunConfig& cfg) {
  return detail::guarded([&]() -> CommandResult {
    validate(cfg);
    std::vector<std::string> names = cfg.suites;
    if (names.empty()) {
      names = default_suites();
      if (!cfg.matrix_path.empty()) names.push_back("matrix");
    }
    std::vector<SuiteResult> results;
    for (const auto& name : names) {
      if (name == "fixtures") results.push_back(suite_fixtures(cfg));
      else if (name == "engines-agree") results.push_back(suite_engines_agree(cfg));
      else if (name == "toeplitz-identity") results.push_back(suite_toeplitz_identity(cfg));
      else if (name == "essential") results.push_back(suite_essential(cfg));
      else if (name == "hygiene") results.push_back(suite_hygiene(cfg));
      else if (name == "matrix") {
        if (cfg.matrix_path.empty()) throw UsageError("suite matrix needs --matrix <dump>");
        results.push_back(suite_matrix(cfg, spec));
      } else throw UsageError("unknown suite '" + name + "'");
    }
    bool all = true;
    Json suites = Json::array();
    std::string failed;
    for (const auto& s : results) {
      all = all && s.passed();
      if (!s.passed()) failed += (failed.empty() ? "" : ", ") + s.name;
      suites.push_back({{"name", s.name}, {"passed", s.passed()}, {"checks", s.checks}, {"failures", s.failures}});
    }
    Json out = {{"command", "verify"}, {"passed", all}, {"suites", suites}};
    return {all ? 0 : 1, render(out), all ? "" : "failed suites: " + failed};
  });
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_COMMANDS_HPP
