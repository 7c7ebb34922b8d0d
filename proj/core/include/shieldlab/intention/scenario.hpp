#pragma once

#include <iosfwd>

#include "shieldlab/intention/counterfactual.hpp"

namespace shieldlab::intention {

// Declarative scenario format:
//
//   scenario <name>
//   peripheral <name> <reference> range <lo> <hi> [int]
//   integral <name> [<name> ...]
//   goal <boolean formula over propositions>
//   step <v> [<v> ...]          # one line per trace step, integral values
FactoredScenario read_scenario(std::istream& in);
FactoredScenario read_scenario_file(const std::string& path);
void write_scenario(std::ostream& out, const FactoredScenario& scenario);
void write_scenario_file(const std::string& path,
                         const FactoredScenario& scenario);

// Report export: one CSV row per trace (sigma, rho) plus a summary block.
void write_report_csv(std::ostream& out, const IntentionReport& report);
void write_report_csv_file(const std::string& path,
                           const IntentionReport& report);

}  // namespace shieldlab::intention
