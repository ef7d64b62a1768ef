// hankel-spectra: spectra of H*_psi H_psi on the Bergman space of the polydisc.
//
//   hankel-spectra exact    "zb1^2*zb2" --cap 10
//   hankel-spectra approx   "zb1*(zb2+1)" --degree 12
//   hankel-spectra boundary "zb1*(zb2+1)" --coord 2 --degree 8,12,16
//   hankel-spectra verify   [--suite engines-agree]

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hankel_spectra/commands.hpp"

namespace hs = hankel_spectra;

namespace {

struct Options {
  hs::RunConfig cfg;
  std::string symbol;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, Options& o, bool needs_symbol) {
  auto* sym = sub->add_option("symbol", o.symbol, "symbol, e.g. \"zb1*(zb2+1)\" or a JSON term list");
  if (needs_symbol) sym->required();
  sub->add_option("--cap", o.cfg.alpha_cap, "alpha enumeration bound")->capture_default_str();
  sub->add_option("--degree", o.cfg.degree_caps, "truncation degree N (comma list for boundary)")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--dim", o.cfg.forced_dim, "embed the symbol in D^dim");
  sub->add_option("--nodes", o.cfg.quadrature_nodes, "Gauss-Legendre nodes per radial factor")->capture_default_str();
  sub->add_option("--samples", o.cfg.samples, "circle samples for slice profiles")->capture_default_str();
  sub->add_option("--tol", o.cfg.tolerance, "containment tolerance")->capture_default_str();
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", o.out, "write output to this file instead of stdout");
  sub->add_flag("--float", o.cfg.force_float, "use floating-point assembly / quadrature");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of Hermitian squares of Hankel operators on the Bergman space of the polydisc"};
  app.require_subcommand(1);
  Options o;

  auto* exact = app.add_subcommand("exact", "closed-form spectrum of a monomial symbol");
  add_common(exact, o, false);
  exact->add_option("--profile", o.cfg.profile,
                    "quasi-homogeneous profile JSON {\"factors\": [[c0, c1, ...], ...], \"winding\": [...]}");
  auto* approx = app.add_subcommand("approx", "finite-section eigenvalues of a polynomial symbol");
  add_common(approx, o, true);
  approx->add_option("--dump", o.cfg.dump_path, "write the compression matrix dump to this file");
  auto* boundary = app.add_subcommand("boundary", "slice-norm profile and essential-spectrum prediction");
  add_common(boundary, o, true);
  boundary->add_option("--coord", o.cfg.coord, "sliced coordinate (1-based, default: last)");
  auto* verify = app.add_subcommand("verify", "cross-engine and fixture verification suites");
  add_common(verify, o, false);
  verify->add_option("--suite", o.cfg.suites, "suites to run (fixtures, engines-agree, toeplitz-identity, essential, "
                                              "hygiene, matrix)")
      ->delimiter(',');
  verify->add_option("--fixtures", o.cfg.fixtures_path, "fixture file replacing the built-in fixtures");
  verify->add_option("--matrix", o.cfg.matrix_path, "matrix dump to re-check (with the symbol, against a fresh assembly)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.cfg.format = o.format == "csv" ? hs::OutputFormat::Csv : hs::OutputFormat::Json;

  hs::CommandResult result;
  try {
    if (*exact) {
      if (o.symbol.empty() && o.cfg.profile.empty()) {
        std::cerr << "exact: give a symbol or --profile\n";
        return 2;
      }
      result = hs::cmd_exact(o.symbol, o.cfg);
    } else if (*approx) {
      result = hs::cmd_approx(o.symbol, o.cfg);
    } else if (*boundary) {
      result = hs::cmd_boundary(o.symbol, o.cfg);
    } else {
      result = hs::cmd_verify(o.symbol, o.cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (!result.message.empty()) std::cerr << result.message << "\n";
  if (!result.output.empty()) {
    if (o.out.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream os(o.out);
      if (!os) {
        std::cerr << "cannot write " << o.out << "\n";
        return 2;
      }
      os << result.output;
    }
  }
  return result.exit_code;
}
