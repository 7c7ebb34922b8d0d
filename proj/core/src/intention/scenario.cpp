#include "shieldlab/intention/scenario.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace shieldlab::intention {

FactoredScenario read_scenario(std::istream& in) {
  FactoredScenario scenario;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "scenario") {
      ls >> scenario.name;
    } else if (tok == "peripheral") {
      PeripheralVariable v;
      std::string kw;
      if (!(ls >> v.name >> v.reference >> kw >> v.lo >> v.hi) ||
          kw != "range")
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected `peripheral <name> <ref> range <lo> "
                         "<hi> [int]`");
      std::string flag;
      if (ls >> flag) {
        if (flag != "int")
          throw ParseError("line " + std::to_string(lineno) +
                           ": unknown flag `" + flag + "`");
        v.integral_valued = true;
      }
      scenario.peripherals.push_back(v);
    } else if (tok == "integral") {
      std::string name;
      while (ls >> name) scenario.integral_names.push_back(name);
    } else if (tok == "goal") {
      std::string rest;
      std::getline(ls, rest);
      const std::size_t start = rest.find_first_not_of(' ');
      scenario.goal = start == std::string::npos ? "" : rest.substr(start);
    } else if (tok == "step") {
      std::vector<int> row;
      int v;
      while (ls >> v) row.push_back(v);
      scenario.integral_trace.push_back(std::move(row));
    } else {
      throw ParseError("line " + std::to_string(lineno) +
                       ": unknown directive `" + tok + "`");
    }
  }
  scenario.validate();
  return scenario;
}

FactoredScenario read_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  return read_scenario(in);
}

void write_scenario(std::ostream& out, const FactoredScenario& scenario) {
  out << "scenario " << scenario.name << '\n';
  out << std::setprecision(17);
  for (const PeripheralVariable& v : scenario.peripherals) {
    out << "peripheral " << v.name << ' ' << v.reference << " range " << v.lo
        << ' ' << v.hi;
    if (v.integral_valued) out << " int";
    out << '\n';
  }
  out << "integral";
  for (const std::string& name : scenario.integral_names) out << ' ' << name;
  out << '\n';
  out << "goal " << scenario.goal << '\n';
  for (const auto& row : scenario.integral_trace) {
    out << "step";
    for (int v : row) out << ' ' << v;
    out << '\n';
  }
}

void write_scenario_file(const std::string& path,
                         const FactoredScenario& scenario) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write scenario file " + path);
  write_scenario(out, scenario);
}

void write_report_csv(std::ostream& out, const IntentionReport& report) {
  out << "trace,sigma,rho\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < report.traces.size(); ++i) {
    const Aggregate& a = report.traces[i].aggregate;
    out << (i == 0 ? std::string("reference")
                   : "cf" + std::to_string(i)) << ',' << a.sigma << ',';
    if (a.rho.has_value()) out << *a.rho;
    out << '\n';
  }
  out << "# summary\n";
  out << "# sigma_T = " << report.combined.sigma << '\n';
  out << "# rho_T = ";
  if (report.combined.rho.has_value()) out << *report.combined.rho;
  out << '\n';
  out << "# verdict = " << verdict_name(report.verdict) << '\n';
  out << "# counterfactuals = " << report.counterfactual_count << '\n';
}

void write_report_csv_file(const std::string& path,
                           const IntentionReport& report) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write report file " + path);
  write_report_csv(out, report);
}

}  // namespace shieldlab::intention
