#include "mrckr/kb.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "json.hpp"
#include "mrckr/error.hpp"

namespace mrckr::kb {

namespace {

struct Token {
  enum class Kind { Name, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\'';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (is_name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      t.kind = Token::Kind::Name;
      t.text = std::string(text.substr(i, j - i));
      advance(j - i);
    } else if (std::string_view(".&|(),[]{}").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

constexpr std::string_view kBottomKeyword = "bottom";

class Parser {
 public:
  Parser(std::string_view text, bool sckr_mode) : tokens_(tokenize(text)), sckr_mode_(sckr_mode) {}

  Ontology parse_ontology(const std::set<std::string>& relations) {
    ontology_.signature.relations = relations;
    while (!at_end()) statement(nullptr);
    return std::move(ontology_);
  }

  SCKR parse_sckr() {
    while (!at_end()) {
      const Token& t = peek();
      if (is_name(t, "context")) {
        next();
        std::string name = expect_name("context name");
        declare_context(name);
        if (accept("{")) {
          while (!accept("}")) {
            if (at_end()) error(peek(), "unterminated context block '" + name + "'");
            statement(&name);
          }
        } else {
          expect(".");
        }
      } else if (is_name(t, "edge")) {
        next();
        const Token& rt = peek();
        std::string rel = expect_name("relation name");
        if (!ontology_.signature.relations.count(rel)) error(rt, "undeclared relation '" + rel + "'");
        std::string child = expect_name("context name");
        std::string parent = expect_name("context name");
        expect(".");
        declare_context(child);
        declare_context(parent);
        relation_entry(rel).edges.emplace_back(child, parent);
      } else if (is_name(t, "relation")) {
        statement(nullptr);
      } else {
        error(t, "statement outside a context block");
      }
    }
    for (const auto& c : eval_contexts_) declare_context(c);
    sckr_.signature = ontology_.signature;
    return std::move(sckr_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  static bool is_name(const Token& t, std::string_view s) {
    return t.kind == Token::Kind::Name && t.text == s;
  }
  bool accept(std::string_view punct) {
    if (peek().kind == Token::Kind::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const Token& t, const std::string& msg) const {
    throw ParseError(msg, t.line, t.column);
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) {
      const Token& t = peek();
      error(t, "expected '" + std::string(punct) + "' but found " +
                   (t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'"));
    }
  }
  std::string expect_name(const std::string& what) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Name) {
      error(t, "expected " + what + " but found " +
                   (t.kind == Token::Kind::End ? std::string("end of input") : "'" + t.text + "'"));
    }
    ++pos_;
    return t.text;
  }

  Relation& relation_entry(const std::string& name) {
    for (auto& r : sckr_.structure.relations) {
      if (r.name == name) return r;
    }
    sckr_.structure.relations.push_back({name, {}});
    return sckr_.structure.relations.back();
  }

  void declare_context(const std::string& name) {
    if (ontology_.signature.contexts.insert(name).second) sckr_.structure.contexts.push_back(name);
    sckr_.kbs[name];
  }

  ConceptRef atom() {
    const Token& t = peek();
    std::string name = expect_name("concept name");
    if (name == "eval" && accept("(")) {
      std::string cls = expect_name("concept name");
      expect(",");
      std::string ctx = expect_name("context name");
      expect(")");
      ontology_.signature.concepts.insert(cls);
      if (sckr_mode_) {
        eval_contexts_.push_back(ctx);  // declared after the explicit ones, keeping their order
      } else {
        ontology_.signature.contexts.insert(ctx);
      }
      return ConceptRef::eval(cls, ctx);
    }
    if (name == kBottomKeyword) error(t, "'bottom' may only appear as a right-hand side");
    ontology_.signature.concepts.insert(name);
    return ConceptRef::atomic(name);
  }

  ConceptExpr conjunction() {
    std::vector<ConceptExpr> parts;
    parts.push_back(ConceptExpr::of(atom()));
    while (accept("&")) parts.push_back(ConceptExpr::of(atom()));
    if (parts.size() == 1) return std::move(parts.front());
    return ConceptExpr::conj(std::move(parts));
  }

  ConceptExpr lhs_item() {
    if (accept("(")) {
      ConceptExpr inner = lhs_top();
      expect(")");
      if (peek().kind == Token::Kind::Punct && peek().text == "&") {
        error(peek(), "disjunction may only appear at the top level of a left-hand side");
      }
      return inner;
    }
    return conjunction();
  }

  ConceptExpr lhs_top() {
    std::vector<ConceptExpr> parts;
    parts.push_back(lhs_item());
    while (accept("|")) parts.push_back(lhs_item());
    if (parts.size() == 1) return std::move(parts.front());
    return ConceptExpr::disj(std::move(parts));
  }

  RawAxiom axiom_body(const Token& kw) {
    RawAxiom ax;
    if (kw.text == "sub") {
      ax.lhs = lhs_top();
      std::string rhs = expect_name("right-hand side concept");
      if (rhs == kBottomKeyword) {
        ax.rhs = ConceptExpr::of(ConceptRef::bottom());
      } else {
        ontology_.signature.concepts.insert(rhs);
        ax.rhs = ConceptExpr::of(ConceptRef::atomic(rhs));
      }
    } else {
      ConceptRef a = atom();
      ConceptRef b = atom();
      ax.lhs = ConceptExpr::conj({ConceptExpr::of(a), ConceptExpr::of(b)});
      ax.rhs = ConceptExpr::of(ConceptRef::bottom());
    }
    expect(".");
    return ax;
  }

  void statement(const std::string* context) {
    const Token& kw = peek();
    if (kw.kind != Token::Kind::Name) error(kw, "expected a statement keyword but found '" + kw.text + "'");
    next();
    if (kw.text == "sub" || kw.text == "disjoint") {
      add_axiom(axiom_body(kw), context, kw);
    } else if (kw.text == "def") {
      expect("[");
      const Token& rt = peek();
      std::string rel = expect_name("relation name");
      expect("]");
      if (!ontology_.signature.relations.count(rel)) error(rt, "undeclared relation '" + rel + "'");
      const Token& inner = peek();
      if (!is_name(inner, "sub") && !is_name(inner, "disjoint")) {
        error(inner, "expected 'sub' or 'disjoint' after def[" + rel + "]");
      }
      next();
      RawAxiom ax = axiom_body(inner);
      ax.relation = rel;
      add_axiom(std::move(ax), context, kw);
    } else if (kw.text == "inst") {
      std::string ind = expect_name("individual name");
      std::string cls = expect_name("concept name");
      expect(".");
      ontology_.signature.individuals.insert(ind);
      ontology_.signature.concepts.insert(cls);
      Assertion a{cls, ind};
      if (context) {
        sckr_.kbs[*context].assertions.push_back(a);
      } else {
        ontology_.assertions.push_back(a);
      }
    } else if (kw.text == "relation") {
      std::string rel = expect_name("relation name");
      expect(".");
      ontology_.signature.relations.insert(rel);
      if (sckr_mode_) relation_entry(rel);
    } else {
      error(kw, "unknown statement '" + kw.text + "'");
    }
  }

  void add_axiom(RawAxiom ax, const std::string* context, const Token& at) {
    if (!context) {
      ontology_.axioms.push_back(std::move(ax));
      return;
    }
    std::vector<Subsumption> parts;
    try {
      parts = normalize(ax);
    } catch (const Error& e) {
      error(at, e.what());
    }
    ContextKB& kb = sckr_.kbs[*context];
    for (auto& s : parts) {
      if (ax.relation) {
        kb.defeasible.push_back({*ax.relation, std::move(s)});
      } else {
        kb.strict.push_back(std::move(s));
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  bool sckr_mode_;
  std::vector<std::string> eval_contexts_;
  Ontology ontology_;
  SCKR sckr_;
};

void flatten_conjunction(const ConceptExpr& e, std::vector<ConceptRef>& out) {
  switch (e.kind) {
    case ConceptExpr::Kind::Ref:
      out.push_back(e.ref);
      break;
    case ConceptExpr::Kind::And:
      for (const auto& c : e.children) flatten_conjunction(c, out);
      break;
    case ConceptExpr::Kind::Or:
      throw Error("disjunction nested inside a conjunction");
  }
}

void collect_disjuncts(const ConceptExpr& e, std::vector<const ConceptExpr*>& out) {
  if (e.kind == ConceptExpr::Kind::Or) {
    for (const auto& c : e.children) collect_disjuncts(c, out);
  } else {
    out.push_back(&e);
  }
}

std::string render_expr(const ConceptExpr& e, bool top) {
  switch (e.kind) {
    case ConceptExpr::Kind::Ref:
      return render(e.ref);
    case ConceptExpr::Kind::And: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += " & ";
        s += render_expr(e.children[i], false);
      }
      return s;
    }
    case ConceptExpr::Kind::Or: {
      std::string s;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += " | ";
        s += "(" + render_expr(e.children[i], false) + ")";
      }
      return top ? s : "(" + s + ")";
    }
  }
  return {};
}

}  // namespace

Ontology parse_ontology(std::string_view text, const std::set<std::string>& relations) {
  return Parser(text, false).parse_ontology(relations);
}

SCKR parse_sckr(std::string_view text) { return Parser(text, true).parse_sckr(); }

std::string render(const ConceptRef& ref) {
  switch (ref.kind) {
    case ConceptRef::Kind::Atomic:
      return ref.cls;
    case ConceptRef::Kind::Bottom:
      return std::string(kBottomKeyword);
    case ConceptRef::Kind::Eval:
      return "eval(" + ref.cls + "," + ref.context + ")";
  }
  return {};
}

std::string render(const RawAxiom& axiom) {
  std::string prefix = axiom.relation ? "def[" + *axiom.relation + "] " : "";
  const ConceptExpr& l = axiom.lhs;
  bool bottom = axiom.rhs.kind == ConceptExpr::Kind::Ref && axiom.rhs.ref.is_bottom();
  if (bottom && l.kind == ConceptExpr::Kind::And && l.children.size() == 2 &&
      l.children[0].kind == ConceptExpr::Kind::Ref && l.children[1].kind == ConceptExpr::Kind::Ref) {
    return prefix + "disjoint " + render(l.children[0].ref) + " " + render(l.children[1].ref) + ".";
  }
  return prefix + "sub " + render_expr(l, true) + " " + render_expr(axiom.rhs, false) + ".";
}

std::string render(const Subsumption& axiom) { return render(lift(axiom)); }

std::string render(const Ontology& ontology) {
  std::ostringstream out;
  for (const auto& r : ontology.signature.relations) out << "relation " << r << ".\n";
  for (const auto& a : ontology.axioms) out << render(a) << "\n";
  for (const auto& a : ontology.assertions) out << "inst " << a.individual << " " << a.cls << ".\n";
  return out.str();
}

std::vector<Subsumption> normalize(const RawAxiom& axiom) {
  if (axiom.rhs.kind != ConceptExpr::Kind::Ref) throw Error("right-hand side must be a single concept or bottom");
  if (axiom.rhs.ref.is_eval()) throw Error("eval may not appear on a right-hand side");
  std::vector<const ConceptExpr*> disjuncts;
  collect_disjuncts(axiom.lhs, disjuncts);
  std::vector<Subsumption> out;
  for (const ConceptExpr* d : disjuncts) {
    Subsumption s;
    flatten_conjunction(*d, s.lhs);
    if (s.lhs.empty()) throw Error("empty left-hand side");
    for (const auto& r : s.lhs) {
      if (r.is_bottom()) throw Error("bottom may not appear on a left-hand side");
    }
    s.rhs = axiom.rhs.ref;
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Subsumption> normalize(const std::vector<RawAxiom>& axioms) {
  std::vector<Subsumption> out;
  for (const auto& a : axioms) {
    auto parts = normalize(a);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

RawAxiom lift(const Subsumption& axiom, std::optional<std::string> relation) {
  RawAxiom r;
  r.relation = std::move(relation);
  if (axiom.lhs.size() == 1) {
    r.lhs = ConceptExpr::of(axiom.lhs.front());
  } else {
    std::vector<ConceptExpr> parts;
    for (const auto& c : axiom.lhs) parts.push_back(ConceptExpr::of(c));
    r.lhs = ConceptExpr::conj(std::move(parts));
  }
  r.rhs = ConceptExpr::of(axiom.rhs);
  return r;
}

NormalizedAxioms normalize_all(const std::vector<RawAxiom>& axioms) {
  NormalizedAxioms out;
  for (const auto& a : axioms) {
    for (auto& s : normalize(a)) {
      if (a.relation) {
        out.defeasible.push_back({*a.relation, std::move(s)});
      } else {
        out.strict.push_back(std::move(s));
      }
    }
  }
  return out;
}

const Relation* ContextStructure::relation(const std::string& name) const {
  for (const auto& r : relations) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

ContextOrder::ContextOrder(const ContextStructure& structure) {
  auto add_name = [&](const std::string& n) {
    if (index_.emplace(n, names_.size()).second) names_.push_back(n);
  };
  for (const auto& c : structure.contexts) add_name(c);
  for (const auto& r : structure.relations) {
    for (const auto& [a, b] : r.edges) {
      add_name(a);
      add_name(b);
    }
  }
  const std::size_t n = names_.size();
  Matrix all(n, std::vector<bool>(n, false));
  std::map<std::string, Matrix> direct;
  for (const auto& r : structure.relations) {
    Matrix m(n, std::vector<bool>(n, false));
    for (const auto& [a, b] : r.edges) {
      m[index_.at(a)][index_.at(b)] = true;
      all[index_.at(a)][index_.at(b)] = true;
    }
    direct[r.name] = m;
    strict_[r.name] = closure(std::move(m), false);
  }
  any_ = closure(all, true);
  for (const auto& r : structure.relations) {
    Matrix m(n, std::vector<bool>(n, false));
    for (const auto& other : structure.relations) {
      if (other.name == r.name) continue;
      const Matrix& d = direct[other.name];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (d[i][j]) m[i][j] = true;
        }
      }
    }
    except_[r.name] = closure(std::move(m), true);
  }
}

ContextOrder::Matrix ContextOrder::closure(Matrix m, bool reflexive) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (m[k][j]) m[i][j] = true;
      }
    }
  }
  if (reflexive) {
    for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  }
  return m;
}

std::size_t ContextOrder::index(const std::string& context) const {
  auto it = index_.find(context);
  if (it == index_.end()) throw Error("unknown context '" + context + "'");
  return it->second;
}

const ContextOrder::Matrix& ContextOrder::strict_closure(const std::string& rel) const {
  auto it = strict_.find(rel);
  if (it == strict_.end()) throw Error("unknown relation '" + rel + "'");
  return it->second;
}

const ContextOrder::Matrix& ContextOrder::except_closure(const std::string& rel) const {
  auto it = except_.find(rel);
  if (it == except_.end()) throw Error("unknown relation '" + rel + "'");
  return it->second;
}

bool ContextOrder::below(const std::string& rel, const std::string& a, const std::string& b) const {
  return strict_closure(rel)[index(a)][index(b)];
}

bool ContextOrder::below_or_equal_any(const std::string& a, const std::string& b) const {
  return any_[index(a)][index(b)];
}

bool ContextOrder::below_or_equal_except(const std::string& rel, const std::string& a,
                                         const std::string& b) const {
  return except_closure(rel)[index(a)][index(b)];
}

std::vector<std::string> ContextOrder::strict_scope(const std::string& c) const {
  std::vector<std::string> out;
  std::size_t ci = index(c);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (any_[i][ci]) out.push_back(names_[i]);
  }
  return out;
}

std::vector<std::string> ContextOrder::defeasible_scope(const std::string& rel, const std::string& c) const {
  std::vector<std::string> out;
  const Matrix& ex = except_closure(rel);
  std::size_t ci = index(c);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (ex[i][ci]) out.push_back(names_[i]);
  }
  return out;
}

std::vector<std::string> ContextOrder::override_scope(const std::string& rel, const std::string& c) const {
  const Matrix& st = strict_closure(rel);
  const Matrix& ex = except_closure(rel);
  std::size_t ci = index(c);
  std::vector<std::string> out;
  for (std::size_t lo = 0; lo < names_.size(); ++lo) {
    for (std::size_t mid = 0; mid < names_.size(); ++mid) {
      if (st[lo][mid] && ex[mid][ci]) {
        out.push_back(names_[lo]);
        break;
      }
    }
  }
  return out;
}

bool ContextOrder::is_strict(const std::string& rel) const {
  const Matrix& st = strict_closure(rel);
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (st[i][i]) return false;
  }
  return true;
}

std::string render(const SCKR& sckr) {
  std::ostringstream out;
  for (const auto& r : sckr.structure.relations) out << "relation " << r.name << ".\n";
  for (const auto& c : sckr.structure.contexts) {
    auto it = sckr.kbs.find(c);
    if (it == sckr.kbs.end() ||
        (it->second.strict.empty() && it->second.defeasible.empty() && it->second.assertions.empty())) {
      out << "context " << c << ".\n";
      continue;
    }
    out << "context " << c << " {\n";
    for (const auto& s : it->second.strict) out << "  " << render(s) << "\n";
    for (const auto& d : it->second.defeasible) out << "  " << render(lift(d.axiom, d.relation)) << "\n";
    for (const auto& a : it->second.assertions) out << "  inst " << a.individual << " " << a.cls << ".\n";
    out << "}\n";
  }
  for (const auto& r : sckr.structure.relations) {
    for (const auto& [a, b] : r.edges) out << "edge " << r.name << " " << a << " " << b << ".\n";
  }
  return out.str();
}

ValidationReport validate(const SCKR& sckr) {
  ValidationReport report;
  auto err = [&](std::string msg) { report.errors.push_back(std::move(msg)); };
  const Signature& sig = sckr.signature;

  auto check_disjoint = [&](const std::set<std::string>& a, const char* an, const std::set<std::string>& b,
                            const char* bn) {
    for (const auto& x : a) {
      if (b.count(x)) err("symbol '" + x + "' is used as " + an + " and as " + bn);
    }
  };
  check_disjoint(sig.concepts, "concept", sig.individuals, "individual");
  check_disjoint(sig.concepts, "concept", sig.contexts, "context");
  check_disjoint(sig.concepts, "concept", sig.relations, "relation");
  check_disjoint(sig.individuals, "individual", sig.contexts, "context");
  check_disjoint(sig.individuals, "individual", sig.relations, "relation");
  check_disjoint(sig.contexts, "context", sig.relations, "relation");

  std::set<std::string> declared_contexts(sckr.structure.contexts.begin(), sckr.structure.contexts.end());
  for (const auto& c : declared_contexts) {
    if (!sig.contexts.count(c)) err("context '" + c + "' missing from the signature");
    if (!sckr.kbs.count(c)) err("context '" + c + "' has no knowledge base");
  }
  for (const auto& [c, kb] : sckr.kbs) {
    (void)kb;
    if (!declared_contexts.count(c)) err("knowledge base for undeclared context '" + c + "'");
  }

  bool structure_ok = true;
  for (const auto& r : sckr.structure.relations) {
    if (!sig.relations.count(r.name)) err("relation '" + r.name + "' missing from the signature");
    for (const auto& [a, b] : r.edges) {
      for (const auto* e : {&a, &b}) {
        if (!declared_contexts.count(*e)) {
          err("edge of relation '" + r.name + "' uses unknown context '" + *e + "'");
          structure_ok = false;
        }
      }
    }
  }
  if (structure_ok) {
    ContextOrder order(sckr.structure);
    for (const auto& r : sckr.structure.relations) {
      if (!order.is_strict(r.name)) err("relation '" + r.name + "' is not a strict order");
    }
  }

  auto check_ref = [&](const ConceptRef& ref, bool lhs, const std::string& where) {
    switch (ref.kind) {
      case ConceptRef::Kind::Bottom:
        if (lhs) err("bottom on a left-hand side in " + where);
        break;
      case ConceptRef::Kind::Eval:
        if (!lhs) err("eval on a right-hand side in " + where);
        if (!declared_contexts.count(ref.context)) err("eval references unknown context '" + ref.context + "'");
        [[fallthrough]];
      case ConceptRef::Kind::Atomic:
        if (!sig.concepts.count(ref.cls)) err("unknown concept '" + ref.cls + "' in " + where);
        break;
    }
  };
  auto check_axiom = [&](const Subsumption& s, const std::string& where) {
    if (s.lhs.empty()) err("empty left-hand side in " + where);
    for (const auto& r : s.lhs) check_ref(r, true, where);
    check_ref(s.rhs, false, where);
  };
  for (const auto& [c, kb] : sckr.kbs) {
    for (const auto& s : kb.strict) check_axiom(s, "context '" + c + "'");
    for (const auto& d : kb.defeasible) {
      if (!sig.relations.count(d.relation) || !sckr.structure.relation(d.relation)) {
        err("defeasible axiom in context '" + c + "' uses unknown relation '" + d.relation + "'");
      }
      check_axiom(d.axiom, "context '" + c + "'");
    }
    for (const auto& a : kb.assertions) {
      if (!sig.concepts.count(a.cls)) err("unknown concept '" + a.cls + "' in context '" + c + "'");
      if (!sig.individuals.count(a.individual)) {
        err("unknown individual '" + a.individual + "' in context '" + c + "'");
      }
    }
  }
  return report;
}

GroundImplication instantiate(const Subsumption& axiom, const std::string& individual) {
  GroundImplication g;
  for (const auto& r : axiom.lhs) {
    if (r.is_eval()) throw Error("cannot instantiate an axiom containing eval without a context");
    if (r.is_bottom()) throw Error("bottom on a left-hand side");
    g.body.push_back({r.cls, individual});
  }
  if (axiom.rhs.is_eval()) throw Error("eval on a right-hand side");
  if (axiom.rhs.is_atomic()) g.head = Assertion{axiom.rhs.cls, individual};
  return g;
}

std::vector<std::pair<std::string, std::string>> atomic_edges(const std::vector<Subsumption>& axioms) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : axioms) {
    if (s.lhs.size() == 1 && s.lhs[0].is_atomic() && s.rhs.is_atomic()) {
      out.emplace_back(s.lhs[0].cls, s.rhs.cls);
    }
  }
  return out;
}

bool is_binary_disjointness(const Subsumption& axiom) {
  return axiom.rhs.is_bottom() && axiom.lhs.size() == 2 && axiom.lhs[0].is_atomic() && axiom.lhs[1].is_atomic();
}

const SceneObject* Scene::find(const std::string& object_id) const {
  for (const auto& o : objects) {
    if (o.id == object_id) return &o;
  }
  return nullptr;
}

Scene parse_scene(std::string_view json_text, const Signature* bound) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed scene JSON: ") + e.what());
  }
  Scene scene;
  try {
    scene.id = j.at("scene").get<std::string>();
    std::set<std::string> seen;
    for (const auto& o : j.at("objects")) {
      SceneObject obj;
      obj.id = o.at("id").get<std::string>();
      if (!seen.insert(obj.id).second) throw Error("duplicate object id '" + obj.id + "'");
      if (o.contains("classes")) {
        for (const auto& c : o.at("classes")) {
          std::string cls = c.get<std::string>();
          if (bound && !bound->concepts.count(cls)) {
            throw Error("object '" + obj.id + "' has unknown class '" + cls + "'");
          }
          if (std::find(obj.concepts.begin(), obj.concepts.end(), cls) == obj.concepts.end()) {
            obj.concepts.push_back(cls);
          }
        }
      }
      if (o.contains("attributes")) {
        for (const auto& [k, v] : o.at("attributes").items()) obj.attributes[k] = v.get<std::string>();
      }
      scene.objects.push_back(std::move(obj));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed scene: ") + e.what());
  }
  return scene;
}

std::string render_scene(const Scene& scene) {
  nlohmann::ordered_json j;
  j["scene"] = scene.id;
  j["objects"] = nlohmann::ordered_json::array();
  for (const auto& o : scene.objects) {
    nlohmann::ordered_json jo;
    jo["id"] = o.id;
    jo["classes"] = o.concepts;
    jo["attributes"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : o.attributes) jo["attributes"][k] = v;
    j["objects"].push_back(std::move(jo));
  }
  return j.dump(2);
}

}  // namespace mrckr::kb
