#pragma once

#include "cge/report.hpp"

#include <string>
#include <vector>

namespace cge {

/// names accepted by run_suite, in documentation order
const std::vector<std::string> &suite_names();

/// runs one verification suite; throws std::invalid_argument for unknown
/// suite names or invalid configs
Report run_suite(const SuiteConfig &cfg);

} // namespace cge
