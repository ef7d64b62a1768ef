#ifndef HANKEL_SPECTRA_IO_HPP
#define HANKEL_SPECTRA_IO_HPP

// JSON / CSV rendering of engine results and the matrix dump format.
//
// Exact values are always strings "num/den"; floats are JSON numbers printed
// shortest-round-trip, so identical inputs give byte-identical output.
//
// Matrix dump:
//   hankel-spectra-matrix dim=<d> N=<N> hash=<16 hex> exactness=<rational|float> size=<n>
//   weights w_1 ... w_n                       (rational only)
//   n lines of n tab-separated entries
// Rational entries are "re im" pairs of "num/den" strings holding the
// monomial-basis gram (/ pi^d); the orthonormal entry is g sqrt(w_i w_j).
// Float entries are "re im" pairs of %.17g decimals of the orthonormal matrix.

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "core.hpp"
#include "galerkin.hpp"
#include "quasihomogeneous.hpp"

namespace hankel_spectra {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<int> to_vector(const MultiIndex& a) { return {a.entries().begin(), a.entries().end()}; }

inline std::vector<std::size_t> to_one_based(const SubsetB& b) {
  std::vector<std::size_t> out;
  for (std::size_t k : b.members()) out.push_back(k + 1);
  return out;
}

inline Json to_json(const Provenance& p) {
  return {{"alpha", to_vector(p.alpha)}, {"B", to_one_based(p.subset)}, {"full_set", p.full_set}};
}

inline Json to_json(const EigenRecord& r) {
  Json prov = Json::array();
  for (const auto& p : r.provenance) prov.push_back(to_json(p));
  return {{"value", to_fraction_string(r.value)},
          {"approx", r.value.get_d()},
          {"multiplicity", to_string(r.multiplicity)},
          {"attained", r.attained()},
          {"limit_point", r.is_limit_point},
          {"essential", r.in_essential_spectrum},
          {"provenance", prov}};
}

inline Json to_json(const SpectrumSet& s) {
  Json records = Json::array();
  for (const auto& r : s.records) records.push_back(to_json(r));
  Json out = {{"alpha_cap", s.alpha_cap},
              {"contains_zero", s.contains_zero},
              {"truncated", s.truncated},
              {"records", records}};
  out["warning"] = s.warning ? Json(*s.warning) : Json(nullptr);
  return out;
}

inline Json to_json(const QhSpectrum& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries) {
    Json j = {{"alpha", to_vector(e.eigenvalue.alpha)},
              {"value", e.eigenvalue.value},
              {"branch", to_string(e.eigenvalue.branch)},
              {"in_cluster", e.in_cluster}};
    j["exact"] = e.eigenvalue.exact ? Json(to_fraction_string(*e.eigenvalue.exact)) : Json(nullptr);
    entries.push_back(j);
  }
  return {{"alpha_cap", s.alpha_cap},
          {"cluster_tolerance", s.cluster_tolerance},
          {"contains_zero", s.contains_zero},
          {"entries", entries}};
}

inline Json to_json(const SliceNormProfile& p) {
  Json samples = Json::array();
  for (const auto& s : p.samples) samples.push_back({{"theta", s.theta}, {"lambda", s.lambda_q}});
  return {{"coord", p.coord + 1},
          {"degree_cap", p.degree_cap},
          {"constant", p.constant},
          {"relative_variation", p.relative_variation},
          {"min", p.min_value},
          {"max", p.max_value},
          {"note", "slice norms are compression lower bounds, non-decreasing in degree_cap"},
          {"samples", samples}};
}

inline Json to_json(const EssentialSetPrediction& p) {
  Json points = Json::array(), intervals = Json::array();
  for (const auto& x : p.points)
    points.push_back({{"value", x.value}, {"provenance", x.provenance}, {"approximate", x.approximate}});
  for (const auto& x : p.intervals)
    intervals.push_back(
        {{"lo", x.lo}, {"hi", x.hi}, {"provenance", x.provenance}, {"approximate", x.approximate}});
  return {{"points", points}, {"intervals", intervals}};
}

inline Json to_json(const ContainmentReport& r) {
  Json points = Json::array(), gaps = Json::array();
  for (const auto& p : r.points)
    points.push_back({{"value", p.value},
                      {"nearest", p.nearest},
                      {"distance", p.distance},
                      {"within_tolerance", p.within_tolerance}});
  for (const auto& g : r.gaps)
    gaps.push_back({{"interval", {g.lo, g.hi}},
                    {"max_gap", g.max_gap},
                    {"at_N", g.degree_cap},
                    {"count_inside", g.count_inside}});
  return {{"tolerance", r.tolerance}, {"points", points}, {"gaps", gaps}};
}

/// CSV field quoting (RFC 4180).
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string provenance_text(const std::vector<Provenance>& prov) {
  std::string out;
  for (const auto& p : prov) out += (out.empty() ? "" : ";") + p.alpha.to_string() + p.subset.to_string();
  return out;
}

inline std::string to_csv(const SpectrumSet& s) {
  std::ostringstream os;
  os << "value,approx,multiplicity,essential,limit_point,provenance\n";
  for (const auto& r : s.records)
    os << to_fraction_string(r.value) << ',' << format_double(r.value.get_d()) << ',' << to_string(r.multiplicity)
       << ',' << (r.in_essential_spectrum ? "true" : "false") << ',' << (r.is_limit_point ? "true" : "false") << ','
       << csv_field(provenance_text(r.provenance)) << '\n';
  return os.str();
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

inline void write_matrix_dump(std::ostream& os, const CompressionMatrix& m) {
  const std::size_t n = m.size();
  os << "hankel-spectra-matrix dim=" << m.truncation.dim() << " N=" << m.truncation.degree_cap()
     << " hash=" << hash_hex(m.symbol_hash) << " exactness=" << to_string(m.exactness) << " size=" << n << '\n';
  const bool exact = m.exactness == Exactness::ExactRational;
  if (exact) {
    os << "weights";
    for (long w : m.weights) os << ' ' << w;
    os << '\n';
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) os << '\t';
      if (exact) {
        const ComplexRational& g = m.gram_at(i, j);
        os << to_fraction_string(g.re) << ' ' << to_fraction_string(g.im);
      } else {
        os << format_double(m.at(i, j).real()) << ' ' << format_double(m.at(i, j).imag());
      }
    }
    os << '\n';
  }
}

struct MatrixDump {
  std::size_t dim = 0;
  int degree_cap = 0;
  std::string hash;
  Exactness exactness = Exactness::Float;
  std::size_t size = 0;
  std::vector<long> weights;
  std::vector<ComplexRational> gram;            // rational dumps
  std::vector<std::complex<double>> entries;    // orthonormal matrix, both kinds
};

inline MatrixDump read_matrix_dump(std::istream& is) {
  MatrixDump d;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("matrix dump: missing header");
  std::istringstream header(line);
  std::string magic;
  header >> magic;
  if (magic != "hankel-spectra-matrix") throw std::runtime_error("matrix dump: bad magic");
  std::string field;
  bool seen[5] = {};
  while (header >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("matrix dump: bad header field " + field);
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "dim") d.dim = std::stoul(value), seen[0] = true;
    else if (key == "N") d.degree_cap = std::stoi(value), seen[1] = true;
    else if (key == "hash") d.hash = value, seen[2] = true;
    else if (key == "exactness") {
      if (value != "rational" && value != "float") throw std::runtime_error("matrix dump: bad exactness " + value);
      d.exactness = value == "rational" ? Exactness::ExactRational : Exactness::Float;
      seen[3] = true;
    } else if (key == "size") d.size = std::stoul(value), seen[4] = true;
    else throw std::runtime_error("matrix dump: unknown header field " + key);
  }
  for (bool s : seen)
    if (!s) throw std::runtime_error("matrix dump: incomplete header");
  const std::size_t n = d.size;
  const bool exact = d.exactness == Exactness::ExactRational;
  if (exact) {
    if (!std::getline(is, line)) throw std::runtime_error("matrix dump: missing weights");
    std::istringstream ws(line);
    std::string tag;
    ws >> tag;
    if (tag != "weights") throw std::runtime_error("matrix dump: expected weights line");
    long w;
    while (ws >> w) d.weights.push_back(w);
    if (d.weights.size() != n) throw std::runtime_error("matrix dump: weight count mismatch");
  }
  d.entries.resize(n * n);
  if (exact) d.gram.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("matrix dump: missing row " + std::to_string(i));
    std::istringstream row(line);
    for (std::size_t j = 0; j < n; ++j) {
      std::string re, im;
      if (!(row >> re >> im)) throw std::runtime_error("matrix dump: short row " + std::to_string(i));
      if (exact) {
        ComplexRational g(parse_rational(re), parse_rational(im));
        d.entries[i * n + j] = g.to_complex() * std::sqrt(double(d.weights[i]) * double(d.weights[j]));
        d.gram[i * n + j] = std::move(g);
      } else {
        d.entries[i * n + j] = {std::stod(re), std::stod(im)};
      }
    }
  }
  return d;
}

}  // namespace hankel_spectra

#endif  // HANKEL_SPECTRA_IO_HPP
