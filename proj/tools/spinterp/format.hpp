#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "spinterp/poly.hpp"
#include "spinterp/report.hpp"

namespace spinterp::cli {

// Bumped whenever a JSON key is added, renamed or removed.
inline constexpr const char* kReportSchemaVersion = "1";

enum class Format { Text, Json, Csv };

struct RunInfo {
  std::string ring;
  std::uint64_t n = 0, T = 0, D = 0;
  bool timing = false;
};

template <CoefficientRing R>
nlohmann::ordered_json to_json(const InterpolationReport<R>& r, const RunInfo& info) {
  nlohmann::ordered_json j;
  j["spec_version"] = kReportSchemaVersion;
  j["poly"] = to_string(r.poly);
  j["terms"] = r.poly.term_count();
  j["algorithm"] = to_string(r.algorithm);
  j["backend"] = r.backend.name();
  j["ring"] = info.ring;
  j["n"] = info.n;
  j["T"] = info.T;
  j["D"] = info.D;
  j["probes"] = r.probes;
  j["univariate_interpolations"] = r.univariate_interpolations;
  j["max_degree_bound"] = r.max_degree_bound;

  auto& init = j["initial"];
  init["image_count"] = r.initial.image_count;
  init["selection_window"] = r.initial.selection_window;
  init["test_window"] = r.initial.test_window;
  init["test_threshold"] = r.initial.test_threshold;
  if (r.algorithm == Algorithm::Base) {
    init["p"] = r.initial.modulus;
  } else {
    init["N1"] = r.initial.N1;
    init["N2"] = r.initial.N2;
    init["N3"] = r.initial.N3;
    init["K"] = r.initial.K;
    init["primes"] = r.initial.primes;
  }

  j["rounds"] = nlohmann::ordered_json::array();
  for (const auto& round : r.rounds) {
    nlohmann::ordered_json o;
    o["term_bound"] = round.remaining_bound;
    o["alpha"] = round.alpha;
    o["selector"] = round.selector;
    o["base"] = round.base;
    o["modulus"] = round.modulus;
    o["candidates"] = round.candidates.size();
    o["accepted"] = round.accepted.term_count();
    o["accepted_poly"] = to_string(round.accepted);
    j["rounds"].push_back(std::move(o));
  }
  if (info.timing) j["wall_ms"] = r.wall_ms;
  return j;
}

template <CoefficientRing R>
void write_text(std::ostream& out, const InterpolationReport<R>& r, const RunInfo& info) {
  out << "poly: " << to_string(r.poly) << "\n"
      << "algorithm: " << to_string(r.algorithm) << "\n"
      << "backend: " << r.backend.name() << "\n"
      << "ring: " << info.ring << "\n"
      << "bounds: n=" << info.n << " T=" << info.T << " D=" << info.D << "\n";
  if (r.algorithm == Algorithm::Base) {
    out << "p: " << r.initial.modulus << "\n";
  } else {
    out << "N1 N2 N3 K: " << r.initial.N1 << " " << r.initial.N2 << " " << r.initial.N3 << " "
        << r.initial.K << "\n";
  }
  out << "probes: " << r.probes << "\n"
      << "univariate_interpolations: " << r.univariate_interpolations << "\n"
      << "rounds: " << r.rounds.size() << "\n";
  for (std::size_t i = 0; i < r.rounds.size(); ++i) {
    const auto& round = r.rounds[i];
    out << "  round " << i + 1 << ": T=" << round.remaining_bound << " alpha=" << round.alpha
        << (r.algorithm == Algorithm::Base ? " d0=" : " j0=") << round.selector
        << " p=" << round.modulus << " candidates=" << round.candidates.size()
        << " accepted=" << round.accepted.term_count() << "\n";
  }
  if (info.timing) out << "wall_ms: " << r.wall_ms << "\n";
}

inline void write_csv_header(std::ostream& out, bool timing) {
  out << "n,T,D,ring,algorithm,backend,probes,univariate_count,rounds,poly";
  if (timing) out << ",ms";
  out << "\n";
}

template <CoefficientRing R>
void write_csv_row(std::ostream& out, const InterpolationReport<R>& r, const RunInfo& info) {
  out << info.n << "," << info.T << "," << info.D << "," << info.ring << ","
      << to_string(r.algorithm) << "," << r.backend.name() << "," << r.probes << ","
      << r.univariate_interpolations << "," << r.rounds.size() << ",\"" << to_string(r.poly)
      << "\"";
  if (info.timing) out << "," << r.wall_ms;
  out << "\n";
}

template <CoefficientRing R>
void write_report(std::ostream& out, Format format, const InterpolationReport<R>& r,
                  const RunInfo& info) {
  switch (format) {
    case Format::Text: write_text(out, r, info); break;
    case Format::Json: out << to_json(r, info).dump(2) << "\n"; break;
    case Format::Csv:
      write_csv_header(out, info.timing);
      write_csv_row(out, r, info);
      break;
  }
}

}  // namespace spinterp::cli
