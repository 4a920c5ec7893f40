#include "mrckr/asp/program.hpp"

#include <cctype>
#include <sstream>

#include "mrckr/error.hpp"

namespace mrckr::asp {

namespace {

bool is_lower_identifier(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

void collect_vars(const Atom& a, std::set<std::string>& out) {
  for (const auto& t : a.args) {
    if (t.is_variable()) out.insert(t.text);
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  struct Tok {
    enum class Kind { Ident, Variable, String, Integer, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1, column = 1;
  };

  Tok next() {
    skip();
    Tok t;
    t.line = line_;
    t.column = col_;
    if (i_ >= text_.size()) return t;
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
      t.text = std::string(text_.substr(i_, j - i_));
      t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::Kind::Variable : Tok::Kind::Ident;
      advance(j - i_);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && i_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_ + 1])))) {
      std::size_t j = i_ + 1;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
      t.text = std::string(text_.substr(i_, j - i_));
      t.kind = Tok::Kind::Integer;
      advance(j - i_);
      return t;
    }
    if (c == '"') {
      advance(1);
      std::string s;
      while (true) {
        if (i_ >= text_.size()) throw ParseError("unterminated string", t.line, t.column);
        char d = text_[i_];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\' && i_ + 1 < text_.size()) {
          char e = text_[i_ + 1];
          s += (e == 'n') ? '\n' : e;
          advance(2);
          continue;
        }
        s += d;
        advance(1);
      }
      t.kind = Tok::Kind::String;
      t.text = std::move(s);
      return t;
    }
    for (std::string_view p : {":-", ":~"}) {
      if (text_.substr(i_, p.size()) == p) {
        t.kind = Tok::Kind::Punct;
        t.text = std::string(p);
        advance(p.size());
        return t;
      }
    }
    if (std::string_view("().,[]@").find(c) != std::string_view::npos) {
      t.kind = Tok::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i_) {
      if (text_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }
  void skip() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '%') {
        while (i_ < text_.size() && text_[i_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  std::size_t line_ = 1, col_ = 1;
};

class Parser {
 public:
  using Tok = Lexer::Tok;

  explicit Parser(std::string_view text) : lexer_(text) { cur_ = lexer_.next(); }

  Program program() {
    Program p;
    while (cur_.kind != Tok::Kind::End) statement(p);
    return p;
  }

  Atom single_atom() {
    Atom a = atom();
    if (cur_.kind != Tok::Kind::End) error("trailing input after atom");
    return a;
  }

  AtomSet atom_list() {
    AtomSet out;
    while (cur_.kind != Tok::Kind::End) out.insert(atom());
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& msg) const { throw ParseError(msg, cur_.line, cur_.column); }

  bool is_punct(std::string_view p) const { return cur_.kind == Tok::Kind::Punct && cur_.text == p; }
  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    cur_ = lexer_.next();
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) error("expected '" + std::string(p) + "'");
  }

  Term term() {
    Term t;
    switch (cur_.kind) {
      case Tok::Kind::Ident:
        t = Term::symbol(cur_.text);
        break;
      case Tok::Kind::Variable:
        t = Term::variable(cur_.text);
        break;
      case Tok::Kind::String:
        t = Term::string(cur_.text);
        break;
      case Tok::Kind::Integer:
        t = Term::integer(std::stoll(cur_.text));
        break;
      default:
        error("expected a term");
    }
    cur_ = lexer_.next();
    return t;
  }

  Atom atom() {
    if (cur_.kind != Tok::Kind::Ident) error("expected an atom");
    Atom a;
    a.predicate = cur_.text;
    cur_ = lexer_.next();
    if (accept("(")) {
      a.args.push_back(term());
      while (accept(",")) a.args.push_back(term());
      expect(")");
    }
    return a;
  }

  // An empty body is allowed; grounding can simplify every literal away.
  void body(std::vector<Atom>& pos, std::vector<Atom>& neg) {
    if (is_punct(".")) return;
    do {
      if (cur_.kind == Tok::Kind::Ident && cur_.text == "not") {
        cur_ = lexer_.next();
        neg.push_back(atom());
      } else {
        pos.push_back(atom());
      }
    } while (accept(","));
  }

  void statement(Program& p) {
    if (accept(":~")) {
      WeakConstraint w;
      body(w.positive, w.negative);
      expect(".");
      expect("[");
      Term weight = term();
      if (weight.kind != Term::Kind::Integer) error("weak constraint weight must be an integer");
      w.weight = weight.number;
      if (accept("@")) {
        Term level = term();
        if (level.kind != Term::Kind::Integer || level.number != 0) error("only optimization level 0 is supported");
      }
      while (accept(",")) w.terms.push_back(term());
      expect("]");
      p.weaks.push_back(std::move(w));
      return;
    }
    Rule r;
    if (!accept(":-")) {
      r.head = atom();
      if (accept(".")) {
        p.rules.push_back(std::move(r));
        return;
      }
      expect(":-");
    }
    body(r.positive, r.negative);
    expect(".");
    p.rules.push_back(std::move(r));
  }

  Lexer lexer_;
  Tok cur_;
};

}  // namespace

Term Term::constant(const std::string& name) {
  if (is_lower_identifier(name) && name != "not") return symbol(name);
  return string(name);
}

std::string Term::name() const {
  if (kind == Kind::Integer) return std::to_string(number);
  return text;
}

bool Atom::is_ground() const {
  for (const auto& t : args) {
    if (t.is_variable()) return false;
  }
  return true;
}

void Program::append(const Program& other) {
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  weaks.insert(weaks.end(), other.weaks.begin(), other.weaks.end());
}

std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Integer:
      return std::to_string(t.number);
    case Term::Kind::String:
      return quote(t.text);
    case Term::Kind::Symbol:
    case Term::Kind::Variable:
      return t.text;
  }
  return {};
}

std::string render(const Atom& a) {
  std::string s = a.predicate;
  if (!a.args.empty()) {
    s += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) s += ',';
      s += render(a.args[i]);
    }
    s += ')';
  }
  return s;
}

namespace {
std::string render_body(const std::vector<Atom>& pos, const std::vector<Atom>& neg) {
  std::string s;
  bool first = true;
  for (const auto& a : pos) {
    if (!first) s += ", ";
    s += render(a);
    first = false;
  }
  for (const auto& a : neg) {
    if (!first) s += ", ";
    s += "not " + render(a);
    first = false;
  }
  return s;
}
}  // namespace

std::string render(const Rule& r) {
  if (r.is_fact()) return render(*r.head) + ".";
  std::string body = render_body(r.positive, r.negative);
  if (r.is_constraint()) return ":- " + body + ".";
  return render(*r.head) + " :- " + body + ".";
}

std::string render(const WeakConstraint& w) {
  std::string s = ":~ " + render_body(w.positive, w.negative) + ". [" + std::to_string(w.weight) + "@0";
  for (const auto& t : w.terms) s += "," + render(t);
  return s + "]";
}

std::string render(const AtomSet& atoms) {
  std::string s;
  for (const auto& a : atoms) {
    if (!s.empty()) s += ' ';
    s += render(a);
  }
  return s;
}

std::string to_aspcore2(const Program& program) {
  std::ostringstream out;
  for (const auto& r : program.rules) out << render(r) << "\n";
  for (const auto& w : program.weaks) out << render(w) << "\n";
  return out.str();
}

Program parse_program(std::string_view text) { return Parser(text).program(); }

Atom parse_atom(std::string_view text) { return Parser(text).single_atom(); }

AtomSet parse_atom_list(std::string_view text) { return Parser(text).atom_list(); }

std::optional<std::string> safety_violation(const Rule& r) {
  std::set<std::string> bound;
  for (const auto& a : r.positive) collect_vars(a, bound);
  std::set<std::string> needed;
  if (r.head) collect_vars(*r.head, needed);
  for (const auto& a : r.negative) collect_vars(a, needed);
  for (const auto& v : needed) {
    if (!bound.count(v)) return "unsafe variable " + v + " in rule: " + render(r);
  }
  return std::nullopt;
}

std::optional<std::string> safety_violation(const WeakConstraint& w) {
  std::set<std::string> bound;
  for (const auto& a : w.positive) collect_vars(a, bound);
  std::set<std::string> needed;
  for (const auto& a : w.negative) collect_vars(a, needed);
  for (const auto& t : w.terms) {
    if (t.is_variable()) needed.insert(t.text);
  }
  for (const auto& v : needed) {
    if (!bound.count(v)) return "unsafe variable " + v + " in weak constraint: " + render(w);
  }
  if (w.weight < 0) return "negative weight in weak constraint: " + render(w);
  return std::nullopt;
}

}  // namespace mrckr::asp
