// hforge-elaborate: fills "?" steps of a derivation script from their rule
// instances, prints the result and checks it.

#include <CLI11.hpp>
#include <iostream>

#include "hforge/calculi.hpp"
#include "hforge/derivation.hpp"
#include "hforge/io.hpp"

using namespace hforge;

int main(int argc, char** argv) {
  CLI::App app{"elaborate a derivation script"};
  std::string file, id;
  app.add_option("script", file)->required()->check(CLI::ExistingFile);
  app.add_option("--ruleset", id, "overrides the script's rule set");
  CLI11_PARSE(app, argc, argv);
  try {
    Derivation d = parse_derivation(read_file(file), true);
    RuleSet rs = resolve_ruleset(id.empty() ? d.ruleset : id);
    d = elaborate(rs, d);
    std::cout << print_derivation(d);
    CheckResult r = check_derivation(rs, d);
    if (!r.ok()) {
      std::cerr << r.error->str() << "\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
