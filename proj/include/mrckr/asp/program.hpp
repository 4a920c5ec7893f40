#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mrckr::asp {

struct Term {
  enum class Kind { Integer, Symbol, String, Variable };

  Kind kind = Kind::Symbol;
  std::string text;         // Symbol, String, Variable
  std::int64_t number = 0;  // Integer

  static Term variable(std::string name) { return {Kind::Variable, std::move(name), 0}; }
  static Term symbol(std::string name) { return {Kind::Symbol, std::move(name), 0}; }
  static Term string(std::string value) { return {Kind::String, std::move(value), 0}; }
  static Term integer(std::int64_t v) { return {Kind::Integer, {}, v}; }
  /// A constant carrying `name`: a bare symbol when `name` is a valid
  /// lowercase identifier, otherwise a quoted string.
  static Term constant(const std::string& name);

  bool is_variable() const { return kind == Kind::Variable; }
  /// The name this constant was built from by Term::constant.
  std::string name() const;

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  bool is_ground() const;
  auto operator<=>(const Atom&) const = default;
};

using AtomSet = std::set<Atom>;

/// head :- pos, not neg.   A missing head makes the rule an integrity constraint.
struct Rule {
  std::optional<Atom> head;
  std::vector<Atom> positive;
  std::vector<Atom> negative;

  bool is_constraint() const { return !head.has_value(); }
  bool is_fact() const { return head && positive.empty() && negative.empty(); }
  auto operator<=>(const Rule&) const = default;
};

/// :~ pos, not neg. [weight@0, terms]
struct WeakConstraint {
  std::vector<Atom> positive;
  std::vector<Atom> negative;
  std::int64_t weight = 0;
  std::vector<Term> terms;

  auto operator<=>(const WeakConstraint&) const = default;
};

struct Program {
  std::vector<Rule> rules;
  std::vector<WeakConstraint> weaks;

  void append(const Program& other);
  bool operator==(const Program&) const = default;
};

std::string render(const Term& t);
std::string render(const Atom& a);
std::string render(const Rule& r);
std::string render(const WeakConstraint& w);
std::string render(const AtomSet& atoms);

/// One statement per line, rules first then weak constraints, in program order.
std::string to_aspcore2(const Program& program);

/// Parses the subset of ASP-Core-2 that to_aspcore2 emits (normal rules,
/// integrity constraints, weak constraints with an optional @level that must be 0).
Program parse_program(std::string_view text);
Atom parse_atom(std::string_view text);
/// Parses a whitespace-separated list of ground atoms as printed by solvers.
AtomSet parse_atom_list(std::string_view text);

/// Checks that every variable of head, negative body and weak terms occurs in
/// the positive body; returns a description of the first violation.
std::optional<std::string> safety_violation(const Rule& r);
std::optional<std::string> safety_violation(const WeakConstraint& w);

}  // namespace mrckr::asp
