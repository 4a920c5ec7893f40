#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "mrckr/asp/program.hpp"

namespace mrckr::asp {

struct AtomHash {
  std::size_t operator()(const Atom& a) const;
};

struct GroundRule {
  int head = -1;  // -1: integrity constraint
  std::vector<int> positive;
  std::vector<int> negative;
};

struct GroundWeak {
  std::vector<int> positive;
  std::vector<int> negative;
  std::int64_t weight = 0;
  int group = 0;  // index into GroundProgram::groups
};

/// Propositional program over interned atoms. Atom ids are dense and stable.
struct GroundProgram {
  std::vector<Atom> atoms;
  std::unordered_map<Atom, int, AtomHash> index;
  std::vector<GroundRule> rules;
  std::vector<GroundWeak> weaks;
  std::vector<std::vector<Term>> groups;
  std::map<std::vector<Term>, int> group_index;

  int intern(const Atom& a);
  int find(const Atom& a) const;  // -1 when absent
  int group_of(const std::vector<Term>& terms);

  std::size_t atom_count() const { return atoms.size(); }
  std::size_t rule_count() const { return rules.size(); }

  Program to_program() const;
  AtomSet to_atoms(const std::vector<int>& ids) const;
  std::vector<bool> to_truth(const AtomSet& atoms) const;
  /// Requires every rule and weak constraint of `program` to be ground.
  static GroundProgram from_ground(const Program& program);
};

enum class GroundMode {
  Relevant,  // semi-naive: only atoms derivable while ignoring negation
  Naive,     // every substitution over the constant universe
};

/// Throws Error on unsafe rules, negative weights and predicate arity clashes.
GroundProgram ground(const Program& program, GroundMode mode = GroundMode::Relevant);

/// Same as ground(...).to_program().
Program ground_program(const Program& program, GroundMode mode = GroundMode::Relevant);

void check_program(const Program& program);

}  // namespace mrckr::asp
