#pragma once
// Named verification suites over all modules.

#include <map>
#include <string>
#include <vector>

#include "ca/report.hpp"

namespace ca::cli {

// the 22 suite names, in listing order ("all" excluded)
const std::vector<std::string>& suite_names();
// every case name -> its default tolerance
const std::map<std::string, double>& default_tolerances();
// throws config_error for an unknown name; "all" runs every suite
VerificationReport run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace ca::cli
