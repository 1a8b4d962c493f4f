#ifndef RECTADEL_SUITES_HPP
#define RECTADEL_SUITES_HPP

#include "rectadel/pairing.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rectadel {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct RunConfig {
  std::string lie_name = "sl2"; // "sl2" or "table"
  int lie_dim = 0;
  std::vector<Scalar> lie_bracket; // dim^3 when lie_name == "table"
  std::vector<Scalar> lie_form;    // dim^2
  std::vector<Scalar> w{Scalar(0), Scalar(1)};
  std::vector<Scalar> z{Scalar(0), Scalar(1)};
  Window win = square_window(2);
  std::uint64_t seed = 1;
  int samples = 50;
  std::vector<std::string> suites; // empty = all
  std::string output_path;

  LieStructure lie() const;
};

struct CaseFailure {
  std::string case_name;
  std::uint64_t seed = 0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  int cases_run = 0;
  std::vector<CaseFailure> failures;
  long timing_ms = 0;
};

struct RunReport {
  std::string version;
  RunConfig config;
  std::vector<SuiteResult> suites;

  bool all_pass() const
  {
    for (const auto& s : suites)
      if (!s.pass) return false;
    return !suites.empty();
  }
};

const std::vector<std::string>& all_suite_names();
bool is_suite_name(const std::string& name);

/// Run one named suite against the configuration.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

/// Run the selected (or all) suites concurrently; deterministic given the
/// seed, up to the timing fields.
RunReport run(const RunConfig& cfg);

/// Structured report; timing fields are zeroed when include_timing is false
/// so that reports are byte-identical across runs.
std::string report_to_json(const RunReport& rep, bool include_timing);
std::string report_summary(const RunReport& rep);

/// Config file parsing (JSON). Throws std::invalid_argument with a
/// description on malformed input.
RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& cfg);

} // namespace rectadel

#endif
