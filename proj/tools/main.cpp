#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macring/cli.hpp"
#include "macring/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Cohomology rings of polyhedral products Z(K; (X, A))"};
  mac::JobSpec spec;
  std::string command = "betti", format = "text";
  std::size_t budget = 0;
  std::string compare;

  app.add_option("--complex", spec.complex, "complex file, or inline 'm=<n>; facets={..},{..}'")->required();
  app.add_option("--pairs", spec.pairs,
                 "disk-sphere:n | disk-sphere:[n1,..] | pair-file:<path> | cone:<ring-file> | cone:[f1,..], "
                 "optionally followed by ' suspend:[t1,..]'")
      ->capture_default_str();
  app.add_option("--coeff", spec.coefficients, "Z or Zp:<prime>")->capture_default_str();
  app.add_option("--cmd", command, "betti | ring | verify | table | regrade-check")->capture_default_str();
  app.add_option("--out", format, "text | structured")->capture_default_str();
  auto* budget_opt = app.add_option("--budget", budget, "maximum number of simplices in a geometric model");
  auto* compare_opt =
      app.add_option("--compare-suspend", compare, "second suspension vector for regrade-check, e.g. [3,3,3,3]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    spec.command = mac::parse_command(command);
    spec.format = mac::parse_output_format(format);
  } catch (const mac::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (budget_opt->count() > 0) spec.budget = budget;
  if (compare_opt->count() > 0) {
    std::vector<int> t;
    std::string item;
    for (char ch : compare + ",") {
      if (ch == '[' || ch == ']' || ch == ' ') continue;
      if (ch != ',') {
        item += ch;
        continue;
      }
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        t.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        std::cerr << "error: bad entry '" << item << "' in --compare-suspend\n";
        return 2;
      }
      item.clear();
    }
    spec.compare_suspend = t;
  }

  mac::JobResult result = mac::run(spec);
  (result.exit_code == 0 || result.exit_code == 1 ? std::cout : std::cerr) << result.report;
  return result.exit_code;
}
