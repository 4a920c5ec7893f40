// aspsolve: the embedded grounder and solver behind a clingo-style output format.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/program.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/error.hpp"

int main(int argc, char** argv) {
  using namespace mrckr;
  CLI::App app{"Ground and solve a normal program with weak constraints"};
  std::vector<std::string> files;
  std::size_t models = 1;
  app.add_option("files", files, "program files")->required()->check(CLI::ExistingFile);
  app.add_option("-n,--models", models, "answer sets to print, 0 for all (ignored when optimizing)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }
  try {
    asp::Program program;
    for (const auto& f : files) {
      std::ifstream in(f);
      std::ostringstream s;
      s << in.rdbuf();
      program.append(asp::parse_program(s.str()));
    }
    asp::GroundProgram gp = asp::ground(program);
    if (!program.weaks.empty()) {
      auto optima = asp::optimize(gp);
      for (std::size_t i = 0; i < optima.size(); ++i) {
        std::cout << "Answer: " << i + 1 << "\n" << asp::render(optima[i].atoms) << "\nOptimization: " << optima[i].cost
                  << "\n";
      }
      std::cout << (optima.empty() ? "UNSATISFIABLE" : "OPTIMUM FOUND") << "\n";
      return optima.empty() ? 20 : 30;
    }
    auto sets = asp::solve(gp, models == 0 ? std::nullopt : std::optional<std::size_t>(models));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::cout << "Answer: " << i + 1 << "\n" << asp::render(sets[i]) << "\n";
    }
    std::cout << (sets.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
    return sets.empty() ? 20 : 10;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  }
}
