#pragma once
// Verification reports, suite configuration and their text/json forms.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ca::cli {

// bad config file or bad report path: process exit code 2
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::string suite = "all";
  std::uint64_t seed = 20240601;
  int samples = 0;                           // 0: each suite's own count
  std::map<std::string, double> tolerances;  // case name -> override
  double eta = 1.0;
  std::vector<double> hbar_grid{1e-2, 5e-3, 2.5e-3};
  std::vector<double> zeta_grid{2e-2, 1e-2, 5e-3};
  double k = 0.3;    // modulus for the elliptic suites
  double tau = 1.1;  // tau = i * tau for the tau-derivative suites
  int P = 400;       // varrho product truncation
  int N = 0;         // Fourier harmonics, 0: from the nome
  double quad_tol = 1e-10;
};

// key = value lines, '#' comments; unknown keys, bad values and invalid settings throw config_error
SuiteConfig parse_config(const std::string& text);
SuiteConfig load_config(const std::string& path);
void validate(const SuiteConfig& c);
// FNV-1a over the canonical key = value form, 16 hex digits
std::string config_digest(const SuiteConfig& c);
std::string canonical_form(const SuiteConfig& c);

struct Case {
  std::string name;
  std::string inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Summary {
  int total = 0;
  int passed = 0;
  double max_residual = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::vector<Case> cases;  // sorted by name
  Summary summary;
};

Case make_case(std::string name, std::string inputs, double residual, double tolerance);
// sorts the cases and recomputes the summary
void finalize(VerificationReport& r);
bool all_pass(const VerificationReport& r);

enum class Format { json, text };
std::string to_json(const VerificationReport& r);
std::string to_text(const VerificationReport& r);
VerificationReport from_json(const std::string& text);
// empty path: stdout
void emit_report(const VerificationReport& r, Format f, const std::string& path);

}  // namespace ca::cli
