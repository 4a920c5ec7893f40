#pragma once

// Shared vocabulary: concepts, axioms, contexts, contextual relations and
// scenes, plus the text formats they are read from.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mrckr::kb {

struct ConceptRef {
  enum class Kind { Atomic, Bottom, Eval };

  Kind kind = Kind::Atomic;
  std::string cls;
  std::string context;  // only meaningful for Eval

  static ConceptRef atomic(std::string name) { return {Kind::Atomic, std::move(name), {}}; }
  static ConceptRef bottom() { return {Kind::Bottom, {}, {}}; }
  static ConceptRef eval(std::string name, std::string ctx) {
    return {Kind::Eval, std::move(name), std::move(ctx)};
  }

  bool is_atomic() const { return kind == Kind::Atomic; }
  bool is_bottom() const { return kind == Kind::Bottom; }
  bool is_eval() const { return kind == Kind::Eval; }

  auto operator<=>(const ConceptRef&) const = default;
};

/// lhs_1 ⊓ ... ⊓ lhs_n ⊑ rhs
struct Subsumption {
  std::vector<ConceptRef> lhs;
  ConceptRef rhs;

  auto operator<=>(const Subsumption&) const = default;
};

struct DefeasibleAxiom {
  std::string relation;
  Subsumption axiom;

  auto operator<=>(const DefeasibleAxiom&) const = default;
};

/// concept(individual)
struct Assertion {
  std::string cls;
  std::string individual;

  auto operator<=>(const Assertion&) const = default;
};

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> individuals;
  std::set<std::string> contexts;
  std::set<std::string> relations;
};

/// Un-normalized concept expression as written in an ontology source. Only the
/// left-hand side of an axiom may contain disjunction, and only at top level.
struct ConceptExpr {
  enum class Kind { Ref, And, Or };

  Kind kind = Kind::Ref;
  ConceptRef ref;
  std::vector<ConceptExpr> children;

  static ConceptExpr of(ConceptRef r) { return {Kind::Ref, std::move(r), {}}; }
  static ConceptExpr conj(std::vector<ConceptExpr> c) { return {Kind::And, {}, std::move(c)}; }
  static ConceptExpr disj(std::vector<ConceptExpr> c) { return {Kind::Or, {}, std::move(c)}; }

  auto operator<=>(const ConceptExpr&) const = default;
};

struct RawAxiom {
  std::optional<std::string> relation;  // set for defeasible axioms
  ConceptExpr lhs;
  ConceptExpr rhs;

  auto operator<=>(const RawAxiom&) const = default;
};

struct Ontology {
  std::vector<RawAxiom> axioms;
  std::vector<Assertion> assertions;
  Signature signature;
};

/// Parses the native ontology grammar. `relations` pre-declares relation names
/// that may appear in def[...] wrappers without a `relation` statement.
Ontology parse_ontology(std::string_view text, const std::set<std::string>& relations = {});

std::string render(const ConceptRef& ref);
std::string render(const RawAxiom& axiom);
std::string render(const Subsumption& axiom);
std::string render(const Ontology& ontology);

/// Splits a top-level lhs disjunction into one Horn axiom per disjunct.
std::vector<Subsumption> normalize(const RawAxiom& axiom);
std::vector<Subsumption> normalize(const std::vector<RawAxiom>& axioms);
RawAxiom lift(const Subsumption& axiom, std::optional<std::string> relation = std::nullopt);

struct NormalizedAxioms {
  std::vector<Subsumption> strict;
  std::vector<DefeasibleAxiom> defeasible;
};
NormalizedAxioms normalize_all(const std::vector<RawAxiom>& axioms);

struct Relation {
  std::string name;
  std::vector<std::pair<std::string, std::string>> edges;  // (child, parent): child ≺ parent
};

struct ContextStructure {
  std::vector<std::string> contexts;  // declaration order
  std::vector<Relation> relations;    // declaration order; this is the MP scan order

  const Relation* relation(const std::string& name) const;
};

/// Transitive closures over a context structure.
class ContextOrder {
 public:
  explicit ContextOrder(const ContextStructure& structure);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index(const std::string& context) const;

  /// a ≺_rel b
  bool below(const std::string& rel, const std::string& a, const std::string& b) const;
  /// a ⪯_* b (reflexive-transitive closure of the union of all relations)
  bool below_or_equal_any(const std::string& a, const std::string& b) const;
  /// a ⪯_{-rel} b (reflexive-transitive closure of every relation except rel)
  bool below_or_equal_except(const std::string& rel, const std::string& a, const std::string& b) const;

  /// Contexts c' with c' ⪯_* c.
  std::vector<std::string> strict_scope(const std::string& c) const;
  /// Contexts c' with c' ⪯_{-rel} c, where a defeasible axiom of c holds unguarded.
  std::vector<std::string> defeasible_scope(const std::string& rel, const std::string& c) const;
  /// Contexts c'' with c'' ≺_rel c' ⪯_{-rel} c, where overriding is allowed.
  std::vector<std::string> override_scope(const std::string& rel, const std::string& c) const;

  /// False when the closure of `rel` relates some context to itself.
  bool is_strict(const std::string& rel) const;

 private:
  using Matrix = std::vector<std::vector<bool>>;

  static Matrix closure(Matrix m, bool reflexive);
  const Matrix& strict_closure(const std::string& rel) const;
  const Matrix& except_closure(const std::string& rel) const;

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Matrix> strict_;  // per relation, transitive
  std::map<std::string, Matrix> except_;  // per relation, reflexive-transitive of the others
  Matrix any_;                            // reflexive-transitive of all relations
};

struct ContextKB {
  std::vector<Subsumption> strict;
  std::vector<DefeasibleAxiom> defeasible;
  std::vector<Assertion> assertions;
};

struct SCKR {
  Signature signature;
  ContextStructure structure;
  std::map<std::string, ContextKB> kbs;
};

/// Parses a whole contextual repository: `relation R.`, `context C { ... }`,
/// `context C.` and `edge R CHILD PARENT.` statements around ontology statements.
SCKR parse_sckr(std::string_view text);
std::string render(const SCKR& sckr);

struct ValidationReport {
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const SCKR& sckr);

/// A ground Horn implication over one individual; a missing head is ⊥.
struct GroundImplication {
  std::vector<Assertion> body;
  std::optional<Assertion> head;

  auto operator<=>(const GroundImplication&) const = default;
};

GroundImplication instantiate(const Subsumption& axiom, const std::string& individual);

/// Atomic subsumptions A ⊑ B and binary disjointness A ⊓ B ⊑ ⊥ from a list of axioms.
std::vector<std::pair<std::string, std::string>> atomic_edges(const std::vector<Subsumption>& axioms);
bool is_binary_disjointness(const Subsumption& axiom);

struct SceneObject {
  std::string id;
  std::vector<std::string> concepts;
  std::map<std::string, std::string> attributes;

  bool operator==(const SceneObject&) const = default;
};

struct Scene {
  std::string id;
  std::vector<SceneObject> objects;

  const SceneObject* find(const std::string& object_id) const;
  bool operator==(const Scene&) const = default;
};

/// Parses the JSON scene format. When `bound` is given, every class must be a
/// concept of that signature.
Scene parse_scene(std::string_view json, const Signature* bound = nullptr);
std::string render_scene(const Scene& scene);

}  // namespace mrckr::kb
