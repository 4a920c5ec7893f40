#pragma once

// Semirings, weighted formulas over answer sets, algebraic measures, the scene
// modification cost formula and its weak-constraint form.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mrckr/asp/program.hpp"

namespace mrckr::measures {

/// ℕ ∪ {∞}; ∞ is a separate state, never a large integer.
struct ExtendedNatural {
  bool infinite = false;
  std::uint64_t value = 0;

  static ExtendedNatural finite(std::uint64_t v) { return {false, v}; }
  static ExtendedNatural infinity() { return {true, 0}; }

  auto operator<=>(const ExtendedNatural&) const = default;
};

using Value = std::variant<bool, ExtendedNatural, std::int64_t>;

enum class Carrier { Boolean, ExtendedNatural, Natural, Integer };

struct Semiring {
  std::string name;
  Carrier carrier = Carrier::Boolean;
  std::function<Value(const Value&, const Value&)> plus;
  std::function<Value(const Value&, const Value&)> times;
  Value zero;
  Value one;

  bool contains(const Value& v) const;
};

Semiring boolean_semiring();
Semiring min_plus();   // (ℕ ∪ {∞}, min, +, ∞, 0)
Semiring naturals();   // (ℕ, +, ·, 0, 1)
Semiring integers();   // (ℤ, +, ·, 0, 1)
/// boolean | minplus | nat | int
Semiring semiring_by_name(const std::string& name);

std::string render(const Value& v);
/// "true"/"false", "inf", or a decimal integer, checked against the carrier.
Value parse_value(std::string_view text, const Semiring& sr);
std::int64_t to_integer(const Value& v);  // throws on ∞ or booleans

struct WeightedFormula {
  enum class Kind { Const, Pos, Neg, Sum, Prod };

  Kind kind = Kind::Const;
  Value value;
  asp::Atom atom;
  std::vector<WeightedFormula> children;

  static WeightedFormula constant(Value v) { return {Kind::Const, std::move(v), {}, {}}; }
  static WeightedFormula pos(asp::Atom a) { return {Kind::Pos, {}, std::move(a), {}}; }
  static WeightedFormula neg(asp::Atom a) { return {Kind::Neg, {}, std::move(a), {}}; }
  static WeightedFormula sum(std::vector<WeightedFormula> c) { return {Kind::Sum, {}, {}, std::move(c)}; }
  static WeightedFormula prod(std::vector<WeightedFormula> c) { return {Kind::Prod, {}, {}, std::move(c)}; }

  bool operator==(const WeightedFormula&) const = default;
};

Value eval_weighted(const WeightedFormula& f, const asp::AtomSet& interpretation, const Semiring& sr);
Value eval_weighted(const WeightedFormula& f, const std::function<bool(const asp::Atom&)>& holds, const Semiring& sr);

/// Text form: `+` and `*` with the usual precedence, parentheses, constants
/// (integers, `inf`, `true`, `false`), atoms and `not atom`.
WeightedFormula parse_formula(std::string_view text, const Semiring& sr);
std::string render(const WeightedFormula& f);

struct Measure {
  asp::Program program;
  WeightedFormula formula;
  Semiring semiring;
};

/// Throws Error when `answer_set` is not a stable model of the measure's program.
Value measure_weight(const Measure& m, const asp::AtomSet& answer_set);

struct QueryOptions {
  /// Largest number of answer sets explored in one component, and the largest
  /// product expanded when the formula does not split over components.
  std::size_t max_models = 1'000'000;
};

Value atomic_query(const Measure& m, const asp::Atom& atom, const QueryOptions& options = {});
Value overall_weight(const Measure& m, const QueryOptions& options = {});

struct CostConfig {
  std::int64_t add = 1;
  std::int64_t del = 1;
  std::int64_t disp = 2;
  std::int64_t pdel = 2;
  std::int64_t padd = 2;
  std::int64_t pmod = 1;
  std::vector<std::string> allowed_superclasses{"Vehicle", "Animal", "StreetSign"};

  /// Advisory notes, e.g. when pdel = padd > pmod does not hold.
  std::vector<std::string> warnings() const;
  bool operator==(const CostConfig&) const = default;
};

CostConfig parse_cost_config(std::string_view json);
std::string render_cost_config(const CostConfig& c);

/// Ground modification atoms: addition(C,I), deletion(C,I), displacement(I),
/// classVar(I,C,C2) and propertyVar(I,T) with T one of pdel, padd, pmod.
struct ModificationVocabulary {
  std::vector<asp::Atom> atoms;
  std::map<std::pair<std::string, std::string>, std::int64_t> distances;  // (C, C2) -> class distance
};

/// Product over the vocabulary of (atom * cost + not atom) in min-plus.
WeightedFormula build_cost_formula(const CostConfig& costs, const ModificationVocabulary& vocab);

/// One weak constraint per factor of a cost-normal-form formula, terms = [tag] ++ atom arguments.
std::vector<asp::WeakConstraint> formula_to_weaks(const WeightedFormula& formula);

struct ClassDistance {
  std::int64_t distance = 0;
  std::string via;  // shared superclass; empty for identical classes
};

/// Shortest atomic-subsumption chains from both classes to a common allowed
/// superclass; ties go to the lexicographically smallest superclass.
std::optional<ClassDistance> class_distance(const std::vector<std::pair<std::string, std::string>>& subsumptions,
                                            const std::string& c1, const std::string& c2,
                                            const std::vector<std::string>& allowed_supers);

}  // namespace mrckr::measures
