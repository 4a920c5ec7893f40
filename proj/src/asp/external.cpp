#include "mrckr/asp/external.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "mrckr/asp/ground.hpp"
#include "mrckr/error.hpp"

namespace mrckr::asp {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Cost of `atoms` under possibly non-ground weak constraints.
std::int64_t model_cost(const AtomSet& atoms, const std::vector<WeakConstraint>& weaks) {
  if (weaks.empty()) return 0;
  Program p;
  for (const auto& a : atoms) p.rules.push_back({a, {}, {}});
  p.weaks = weaks;
  GroundProgram gp = ground(p);
  std::vector<bool> truth(gp.atoms.size(), false);
  for (const auto& a : atoms) truth[static_cast<std::size_t>(gp.find(a))] = true;
  return cost(gp, truth);
}

bool starts_with(const std::string& s, std::string_view p) { return s.compare(0, p.size(), p) == 0; }

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::vector<CostedAnswerSet> parse_external_models(std::string_view text, const std::vector<WeakConstraint>& weaks) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) lines.push_back(trim(line));
  }
  std::vector<CostedAnswerSet> out;
  bool terminal = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line == "SATISFIABLE" || line == "UNSATISFIABLE" || line == "OPTIMUM FOUND" || line == "UNKNOWN") {
      terminal = true;
      continue;
    }
    if (!starts_with(line, "Answer:")) continue;
    if (i + 1 >= lines.size()) throw Error("malformed solver output: answer " + line + " has no atom line");
    CostedAnswerSet m;
    try {
      m.atoms = parse_atom_list(lines[++i]);
    } catch (const ParseError& e) {
      throw Error(std::string("malformed solver output: ") + e.what());
    }
    if (i + 1 < lines.size() && starts_with(lines[i + 1], "Optimization:")) {
      std::istringstream costs(lines[++i].substr(std::string_view("Optimization:").size()));
      std::int64_t level_cost = 0, total = 0;
      bool any = false;
      while (costs >> level_cost) {
        total += level_cost;
        any = true;
      }
      if (!any) throw Error("malformed solver output: empty Optimization line");
      m.cost = total;
    } else {
      m.cost = model_cost(m.atoms, weaks);
    }
    out.push_back(std::move(m));
  }
  if (!terminal && out.empty()) throw Error("solver output has no answers and no result line");
  return out;
}

std::vector<CostedAnswerSet> cheapest(std::vector<CostedAnswerSet> models) {
  if (models.empty()) return models;
  std::int64_t best = models.front().cost;
  for (const auto& m : models) best = std::min(best, m.cost);
  std::vector<AtomSet> sets;
  for (auto& m : models) {
    if (m.cost == best) sets.push_back(std::move(m.atoms));
  }
  canonical_sort(sets);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<CostedAnswerSet> out;
  for (auto& s : sets) out.push_back({std::move(s), best});
  return out;
}

std::vector<CostedAnswerSet> run_external(const std::string& command_template, const Program& program) {
  namespace fs = std::filesystem;
  std::random_device rd;
  fs::path file = fs::temp_directory_path() / ("mrckr-" + std::to_string(rd()) + ".lp");
  {
    std::ofstream out(file);
    if (!out) throw Error("cannot write " + file.string());
    out << to_aspcore2(program);
  }
  std::string command = command_template;
  auto pos = command.find("{file}");
  if (pos == std::string::npos) {
    command += " " + shell_quote(file.string());
  } else {
    command.replace(pos, 6, shell_quote(file.string()));
  }
  std::string output;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    fs::remove(file);
    throw Error("cannot start solver command: " + command);
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), n);
  pclose(pipe);
  fs::remove(file);
  return parse_external_models(output, program.weaks);
}

}  // namespace mrckr::asp
