#include "mrckr/asp/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "mrckr/error.hpp"

namespace mrckr::asp {

namespace {

constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

struct Body {
  const std::vector<int>* positive;
  const std::vector<int>* negative;
  int head = -1;   // rules only
  int weak = -1;   // index into gp.weaks for weak constraints
  int undecided = 0;
  int false_lits = 0;
  bool triggered = false;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

enum class Goal { Enumerate, AllOptima, FirstOptimum };

// Assignment with completion-style propagation, an unfounded-set check for
// programs with positive cycles, and incremental weak-constraint cost.
class Engine {
 public:
  Engine(const GroundProgram& gp, Deadline deadline) : gp_(gp), deadline_(deadline) {
    const std::size_t n = gp.atoms.size();
    val_.assign(n, -1);
    pos_occ_.resize(n);
    neg_occ_.resize(n);
    head_of_.resize(n);
    support_.assign(n, 0);
    for (const auto& r : gp.rules) {
      Body b{&r.positive, &r.negative, r.head, -1, 0, 0, false};
      add_body(b);
      if (r.head >= 0) {
        head_of_[static_cast<std::size_t>(r.head)].push_back(static_cast<int>(bodies_.size() - 1));
        ++support_[static_cast<std::size_t>(r.head)];
      }
    }
    for (std::size_t w = 0; w < gp.weaks.size(); ++w) {
      const auto& gw = gp.weaks[w];
      add_body({&gw.positive, &gw.negative, -1, static_cast<int>(w), 0, 0, false});
    }
    group_weights_.resize(gp.groups.size());
    group_max_.assign(gp.groups.size(), 0);
    for (std::size_t b = 0; b < bodies_.size(); ++b) check_trigger(static_cast<int>(b));
    tight_ = compute_tight();
  }

  bool root() {
    for (std::size_t b = 0; b < bodies_.size(); ++b) body_queue_.push_back(static_cast<int>(b));
    for (std::size_t a = 0; a < val_.size(); ++a) atom_queue_.push_back(static_cast<int>(a));
    return propagate();
  }

  std::int8_t value(int a) const { return val_[static_cast<std::size_t>(a)]; }
  std::int64_t total() const { return total_; }
  std::size_t mark() const { return trail_.size(); }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int a = trail_.back();
      trail_.pop_back();
      unassign(a);
    }
  }

  void assign(int a, bool v) {
    auto ai = static_cast<std::size_t>(a);
    val_[ai] = v ? 1 : 0;
    trail_.push_back(a);
    for (int b : pos_occ_[ai]) {
      Body& body = bodies_[static_cast<std::size_t>(b)];
      --body.undecided;
      if (!v) inc_false(b);
      check_trigger(b);
      body_queue_.push_back(b);
    }
    for (int b : neg_occ_[ai]) {
      Body& body = bodies_[static_cast<std::size_t>(b)];
      --body.undecided;
      if (v) inc_false(b);
      check_trigger(b);
      body_queue_.push_back(b);
    }
    for (int b : head_of_[ai]) body_queue_.push_back(b);
    atom_queue_.push_back(a);
  }

  bool propagate() {
    while (true) {
      while (!body_queue_.empty() || !atom_queue_.empty()) {
        bool ok;
        if (!body_queue_.empty()) {
          int b = body_queue_.back();
          body_queue_.pop_back();
          ok = check_body(b);
        } else {
          int a = atom_queue_.back();
          atom_queue_.pop_back();
          ok = check_atom(a);
        }
        if (!ok) {
          body_queue_.clear();
          atom_queue_.clear();
          return false;
        }
      }
      if (tight_) return true;
      std::size_t before = trail_.size();
      if (!unfounded()) {
        body_queue_.clear();
        atom_queue_.clear();
        return false;
      }
      if (trail_.size() == before) return true;
    }
  }

  void check_deadline() {
    if (!deadline_ || (++ticks_ & 255) != 0) return;
    if (std::chrono::steady_clock::now() > *deadline_) throw Timeout("search exceeded its time limit");
  }

  const std::vector<Body>& bodies() const { return bodies_; }
  bool weak_positive(int a) const {
    for (int b : pos_occ_[static_cast<std::size_t>(a)]) {
      if (bodies_[static_cast<std::size_t>(b)].weak >= 0) return true;
    }
    return false;
  }
  const std::vector<int>& head_of(int a) const { return head_of_[static_cast<std::size_t>(a)]; }

 private:
  void add_body(Body b) {
    int id = static_cast<int>(bodies_.size());
    b.undecided = static_cast<int>(b.positive->size() + b.negative->size());
    for (int a : *b.positive) pos_occ_[static_cast<std::size_t>(a)].push_back(id);
    for (int a : *b.negative) neg_occ_[static_cast<std::size_t>(a)].push_back(id);
    bodies_.push_back(b);
  }

  void inc_false(int b) {
    Body& body = bodies_[static_cast<std::size_t>(b)];
    if (++body.false_lits == 1 && body.head >= 0) {
      --support_[static_cast<std::size_t>(body.head)];
      atom_queue_.push_back(body.head);
    }
  }

  void dec_false(int b) {
    Body& body = bodies_[static_cast<std::size_t>(b)];
    if (body.false_lits-- == 1 && body.head >= 0) ++support_[static_cast<std::size_t>(body.head)];
  }

  void check_trigger(int b) {
    Body& body = bodies_[static_cast<std::size_t>(b)];
    if (body.weak < 0 || body.triggered || body.undecided != 0 || body.false_lits != 0) return;
    body.triggered = true;
    const auto& w = gp_.weaks[static_cast<std::size_t>(body.weak)];
    auto g = static_cast<std::size_t>(w.group);
    group_weights_[g].push_back(w.weight);
    if (w.weight > group_max_[g]) {
      total_ += w.weight - group_max_[g];
      group_max_[g] = w.weight;
    }
  }

  void untrigger(int b) {
    Body& body = bodies_[static_cast<std::size_t>(b)];
    if (!body.triggered) return;
    body.triggered = false;
    const auto& w = gp_.weaks[static_cast<std::size_t>(body.weak)];
    auto g = static_cast<std::size_t>(w.group);
    auto& ws = group_weights_[g];
    ws.erase(std::find(ws.begin(), ws.end(), w.weight));
    std::int64_t m = ws.empty() ? 0 : *std::max_element(ws.begin(), ws.end());
    total_ += m - group_max_[g];
    group_max_[g] = m;
  }

  void unassign(int a) {
    auto ai = static_cast<std::size_t>(a);
    bool v = val_[ai] == 1;
    for (int b : pos_occ_[ai]) {
      untrigger(b);
      if (!v) dec_false(b);
      ++bodies_[static_cast<std::size_t>(b)].undecided;
    }
    for (int b : neg_occ_[ai]) {
      untrigger(b);
      if (v) dec_false(b);
      ++bodies_[static_cast<std::size_t>(b)].undecided;
    }
    val_[ai] = -1;
  }

  bool check_body(int b) {
    const Body& body = bodies_[static_cast<std::size_t>(b)];
    if (body.weak >= 0 || body.false_lits > 0) return true;
    if (body.undecided == 0) {
      if (body.head < 0) return false;
      auto h = val_[static_cast<std::size_t>(body.head)];
      if (h == 0) return false;
      if (h < 0) assign(body.head, true);
      return true;
    }
    if (body.undecided == 1 && (body.head < 0 || val_[static_cast<std::size_t>(body.head)] == 0)) {
      for (int p : *body.positive) {
        if (val_[static_cast<std::size_t>(p)] < 0) {
          assign(p, false);
          return true;
        }
      }
      for (int n : *body.negative) {
        if (val_[static_cast<std::size_t>(n)] < 0) {
          assign(n, true);
          return true;
        }
      }
    }
    return true;
  }

  bool check_atom(int a) {
    auto ai = static_cast<std::size_t>(a);
    if (val_[ai] != 0 && support_[ai] == 0) {
      if (val_[ai] == 1) return false;
      assign(a, false);
      return true;
    }
    if (val_[ai] == 1 && support_[ai] == 1) {
      for (int b : head_of_[ai]) {
        const Body& body = bodies_[static_cast<std::size_t>(b)];
        if (body.false_lits != 0) continue;
        for (int p : *body.positive) {
          if (val_[static_cast<std::size_t>(p)] < 0) assign(p, true);
        }
        for (int n : *body.negative) {
          if (val_[static_cast<std::size_t>(n)] < 0) assign(n, false);
        }
        break;
      }
    }
    return true;
  }

  // Atoms without a derivation that avoids false literals are set false.
  bool unfounded() {
    const std::size_t n = val_.size();
    std::vector<char> derivable(n, 0);
    std::vector<int> missing(bodies_.size(), 0);
    std::vector<int> queue;
    for (std::size_t b = 0; b < bodies_.size(); ++b) {
      const Body& body = bodies_[b];
      if (body.head < 0 || body.false_lits > 0 || val_[static_cast<std::size_t>(body.head)] == 0) continue;
      missing[b] = static_cast<int>(body.positive->size());
      if (missing[b] == 0 && !derivable[static_cast<std::size_t>(body.head)]) {
        derivable[static_cast<std::size_t>(body.head)] = 1;
        queue.push_back(body.head);
      }
    }
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (int b : pos_occ_[static_cast<std::size_t>(a)]) {
        const Body& body = bodies_[static_cast<std::size_t>(b)];
        if (body.head < 0 || body.false_lits > 0 || val_[static_cast<std::size_t>(body.head)] == 0) continue;
        if (--missing[static_cast<std::size_t>(b)] == 0 && !derivable[static_cast<std::size_t>(body.head)]) {
          derivable[static_cast<std::size_t>(body.head)] = 1;
          queue.push_back(body.head);
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (val_[a] == 0 || derivable[a]) continue;
      if (val_[a] == 1) return false;
      assign(static_cast<int>(a), false);
    }
    return true;
  }

  // True when the positive dependency graph is acyclic.
  bool compute_tight() const {
    const std::size_t n = val_.size();
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (const auto& r : gp_.rules) {
      if (r.head < 0) continue;
      for (int p : r.positive) {
        succ[static_cast<std::size_t>(p)].push_back(r.head);
        ++indeg[static_cast<std::size_t>(r.head)];
      }
    }
    std::vector<int> queue;
    for (std::size_t a = 0; a < n; ++a) {
      if (indeg[a] == 0) queue.push_back(static_cast<int>(a));
    }
    std::size_t seen = 0;
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      ++seen;
      for (int h : succ[static_cast<std::size_t>(a)]) {
        if (--indeg[static_cast<std::size_t>(h)] == 0) queue.push_back(h);
      }
    }
    return seen == n;
  }

  const GroundProgram& gp_;
  Deadline deadline_;
  std::vector<std::int8_t> val_;
  std::vector<int> trail_;
  std::vector<Body> bodies_;
  std::vector<std::vector<int>> pos_occ_, neg_occ_, head_of_;
  std::vector<int> support_;
  std::vector<int> body_queue_, atom_queue_;
  std::vector<std::vector<std::int64_t>> group_weights_;
  std::vector<std::int64_t> group_max_;
  std::int64_t total_ = 0;
  bool tight_ = true;
  std::uint64_t ticks_ = 0;
};

struct Component {
  std::vector<int> atoms;  // branching order
  std::vector<std::vector<int>> models;
  std::int64_t best = kInfinity;
};

// Groups the atoms left open at the root into independent blocks.
std::vector<Component> split(const GroundProgram& gp, const Engine& e) {
  const std::size_t n = gp.atoms.size();
  UnionFind uf(n);
  std::vector<int> group_rep(gp.groups.size(), -1);
  std::vector<char> supported(n, 0);
  for (const auto& body : e.bodies()) {
    if (body.head >= 0 && body.false_lits == 0 && body.undecided == 0) supported[static_cast<std::size_t>(body.head)] = 1;
  }
  for (const auto& body : e.bodies()) {
    if (body.false_lits > 0) continue;
    int first = -1;
    auto link = [&](int a) {
      if (first < 0) {
        first = a;
      } else {
        uf.unite(first, a);
      }
    };
    for (int p : *body.positive) {
      if (e.value(p) < 0) link(p);
    }
    for (int q : *body.negative) {
      if (e.value(q) < 0) link(q);
    }
    if (body.head >= 0) {
      auto hv = e.value(body.head);
      if (hv < 0) {
        link(body.head);
      } else if (hv == 1 && !supported[static_cast<std::size_t>(body.head)] && first >= 0) {
        // The rules that may still support a true head are coupled.
        uf.unite(first, body.head);
      }
    }
    if (body.weak >= 0 && first >= 0) {
      auto g = static_cast<std::size_t>(gp.weaks[static_cast<std::size_t>(body.weak)].group);
      if (group_rep[g] < 0) {
        group_rep[g] = first;
      } else {
        uf.unite(group_rep[g], first);
      }
    }
  }
  std::map<int, std::size_t> slot;
  std::vector<Component> out;
  for (std::size_t a = 0; a < n; ++a) {
    if (e.value(static_cast<int>(a)) >= 0) continue;
    int r = uf.find(static_cast<int>(a));
    auto [it, inserted] = slot.emplace(r, out.size());
    if (inserted) out.emplace_back();
    out[it->second].atoms.push_back(static_cast<int>(a));
  }
  return out;
}

class Searcher {
 public:
  Searcher(Engine& e, Goal goal, std::optional<std::size_t> limit) : e_(e), goal_(goal), limit_(limit) {}

  void run(Component& c) {
    comp_ = &c;
    root_total_ = e_.total();
    if (goal_ != Goal::Enumerate) {
      std::stable_partition(c.atoms.begin(), c.atoms.end(), [&](int a) { return e_.weak_positive(a); });
    }
    dfs(0);
  }

 private:
  bool done() const { return goal_ == Goal::Enumerate && limit_ && comp_->models.size() >= *limit_; }

  void dfs(std::size_t start) {
    e_.check_deadline();
    const auto& atoms = comp_->atoms;
    std::size_t i = start;
    while (i < atoms.size() && e_.value(atoms[i]) >= 0) ++i;
    if (i == atoms.size()) {
      leaf();
      return;
    }
    for (bool v : {false, true}) {
      if (done()) return;
      std::size_t mark = e_.mark();
      e_.assign(atoms[i], v);
      if (e_.propagate() && !prune()) dfs(i + 1);
      e_.undo_to(mark);
    }
  }

  bool prune() const {
    std::int64_t extra = e_.total() - root_total_;
    if (goal_ == Goal::AllOptima) return extra > comp_->best;
    if (goal_ == Goal::FirstOptimum) return extra >= comp_->best;
    return false;
  }

  void leaf() {
    std::vector<int> model;
    for (int a : comp_->atoms) {
      if (e_.value(a) == 1) model.push_back(a);
    }
    std::int64_t extra = e_.total() - root_total_;
    if (goal_ == Goal::Enumerate) {
      comp_->models.push_back(std::move(model));
      return;
    }
    if (extra < comp_->best) {
      comp_->best = extra;
      comp_->models.clear();
    }
    if (extra == comp_->best) {
      if (goal_ == Goal::FirstOptimum) comp_->models.clear();
      comp_->models.push_back(std::move(model));
    }
  }

  Engine& e_;
  Goal goal_;
  std::optional<std::size_t> limit_;
  Component* comp_ = nullptr;
  std::int64_t root_total_ = 0;
};

struct SearchResult {
  ModelFamily family;
  std::int64_t cost = 0;
};

SearchResult search(const GroundProgram& gp, Goal goal, std::optional<std::size_t> limit, Deadline deadline) {
  SearchResult out;
  Engine e(gp, deadline);
  if (!e.root()) return out;
  auto components = split(gp, e);
  for (std::size_t a = 0; a < gp.atoms.size(); ++a) {
    if (e.value(static_cast<int>(a)) == 1) out.family.fixed.push_back(static_cast<int>(a));
  }
  out.cost = e.total();
  Searcher s(e, goal, limit);
  for (auto& c : components) {
    s.run(c);
    if (c.models.empty()) return {};
    if (goal != Goal::Enumerate) out.cost += c.best;
    out.family.parts.push_back(std::move(c.models));
  }
  out.family.satisfiable = true;
  return out;
}

AtomSet to_set(const GroundProgram& gp, const std::vector<int>& ids) { return gp.to_atoms(ids); }

}  // namespace

bool canonical_less(const AtomSet& a, const AtomSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) {
      ++i;
      ++j;
    } else {
      return *i < *j;
    }
  }
  return i != a.end() && j == b.end();
}

void canonical_sort(std::vector<AtomSet>& sets) { std::sort(sets.begin(), sets.end(), canonical_less); }

Program reduct(const Program& ground, const AtomSet& interpretation) {
  Program out;
  for (const auto& r : ground.rules) {
    bool blocked = std::any_of(r.negative.begin(), r.negative.end(),
                               [&](const Atom& a) { return interpretation.count(a) > 0; });
    if (blocked) continue;
    out.rules.push_back({r.head, r.positive, {}});
  }
  return out;
}

bool is_stable(const GroundProgram& gp, const std::vector<bool>& truth) {
  auto holds = [&](int a) { return truth[static_cast<std::size_t>(a)]; };
  for (const auto& r : gp.rules) {
    if (r.head >= 0) continue;
    if (std::all_of(r.positive.begin(), r.positive.end(), holds) &&
        std::none_of(r.negative.begin(), r.negative.end(), holds)) {
      return false;
    }
  }
  // Least model of the reduct by counting missing positive premises.
  const std::size_t n = gp.atoms.size();
  std::vector<std::vector<std::size_t>> watch(n);
  std::vector<int> missing(gp.rules.size(), 0);
  std::vector<char> derived(n, 0);
  std::vector<int> queue;
  for (std::size_t k = 0; k < gp.rules.size(); ++k) {
    const auto& r = gp.rules[k];
    if (r.head < 0 || std::any_of(r.negative.begin(), r.negative.end(), holds)) continue;
    missing[k] = static_cast<int>(r.positive.size());
    for (int p : r.positive) watch[static_cast<std::size_t>(p)].push_back(k);
    if (missing[k] == 0 && !derived[static_cast<std::size_t>(r.head)]) {
      derived[static_cast<std::size_t>(r.head)] = 1;
      queue.push_back(r.head);
    }
  }
  while (!queue.empty()) {
    int a = queue.back();
    queue.pop_back();
    for (std::size_t k : watch[static_cast<std::size_t>(a)]) {
      if (--missing[k] == 0) {
        int h = gp.rules[k].head;
        if (!derived[static_cast<std::size_t>(h)]) {
          derived[static_cast<std::size_t>(h)] = 1;
          queue.push_back(h);
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (static_cast<bool>(derived[a]) != truth[a]) return false;
  }
  return true;
}

bool is_stable(const Program& ground, const AtomSet& interpretation) {
  GroundProgram gp = GroundProgram::from_ground(ground);
  for (const auto& a : interpretation) {
    if (gp.find(a) < 0) return false;
  }
  return is_stable(gp, gp.to_truth(interpretation));
}

std::vector<AtomSet> enumerate(const Program& ground, std::size_t max_atoms) {
  GroundProgram gp = GroundProgram::from_ground(ground);
  const std::size_t n = gp.atoms.size();
  if (n > max_atoms) {
    throw BoundExceeded(std::to_string(n) + " atoms exceed the enumeration bound of " + std::to_string(max_atoms));
  }
  std::vector<AtomSet> out;
  std::vector<bool> truth(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t k = 0; k < n; ++k) truth[k] = (mask >> k) & 1;
    if (!is_stable(gp, truth)) continue;
    AtomSet s;
    for (std::size_t k = 0; k < n; ++k) {
      if (truth[k]) s.insert(gp.atoms[k]);
    }
    out.push_back(std::move(s));
  }
  canonical_sort(out);
  return out;
}

std::int64_t cost(const AtomSet& interpretation, const std::vector<WeakConstraint>& weaks) {
  std::map<std::vector<Term>, std::int64_t> groups;
  for (const auto& w : weaks) {
    bool on = std::all_of(w.positive.begin(), w.positive.end(),
                          [&](const Atom& a) { return interpretation.count(a) > 0; }) &&
              std::none_of(w.negative.begin(), w.negative.end(),
                           [&](const Atom& a) { return interpretation.count(a) > 0; });
    if (!on) continue;
    auto& slot = groups[w.terms];
    slot = std::max(slot, w.weight);
  }
  std::int64_t total = 0;
  for (const auto& [_, w] : groups) total += w;
  return total;
}

std::int64_t cost(const GroundProgram& gp, const std::vector<bool>& truth) {
  std::vector<std::int64_t> best(gp.groups.size(), 0);
  for (const auto& w : gp.weaks) {
    auto holds = [&](int a) { return truth[static_cast<std::size_t>(a)]; };
    if (std::all_of(w.positive.begin(), w.positive.end(), holds) &&
        std::none_of(w.negative.begin(), w.negative.end(), holds)) {
      auto& slot = best[static_cast<std::size_t>(w.group)];
      slot = std::max(slot, w.weight);
    }
  }
  return std::accumulate(best.begin(), best.end(), std::int64_t{0});
}

double ModelFamily::count() const {
  if (!satisfiable) return 0;
  double c = 1;
  for (const auto& p : parts) c *= static_cast<double>(p.size());
  return c;
}

std::vector<std::vector<int>> ModelFamily::expand(std::optional<std::size_t> limit) const {
  std::vector<std::vector<int>> out;
  if (!satisfiable) return out;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (true) {
    if (limit && out.size() >= *limit) break;
    std::vector<int> m = fixed;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto& chosen = parts[k][pick[k]];
      m.insert(m.end(), chosen.begin(), chosen.end());
    }
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
    std::size_t k = 0;
    while (k < parts.size() && ++pick[k] == parts[k].size()) {
      pick[k] = 0;
      ++k;
    }
    if (k == parts.size()) break;
  }
  return out;
}

std::vector<int> ModelFamily::canonical_first(const GroundProgram& gp) const {
  std::vector<int> m = fixed;
  for (const auto& part : parts) {
    const std::vector<int>* best = nullptr;
    AtomSet best_set;
    for (const auto& cand : part) {
      AtomSet s = to_set(gp, cand);
      if (!best || canonical_less(s, best_set)) {
        best = &cand;
        best_set = std::move(s);
      }
    }
    if (best) m.insert(m.end(), best->begin(), best->end());
  }
  std::sort(m.begin(), m.end());
  return m;
}

ModelFamily solve_family(const GroundProgram& gp, const SolveOptions& options) {
  return search(gp, Goal::Enumerate, options.limit, options.deadline).family;
}

std::vector<AtomSet> solve(const GroundProgram& gp, std::optional<std::size_t> limit) {
  ModelFamily f = solve_family(gp, {limit, std::nullopt});
  std::vector<AtomSet> out;
  for (const auto& ids : f.expand(limit)) {
    std::vector<bool> truth(gp.atoms.size(), false);
    for (int a : ids) truth[static_cast<std::size_t>(a)] = true;
    if (!is_stable(gp, truth)) throw Error("internal: solver produced an unstable model");
    out.push_back(gp.to_atoms(ids));
  }
  canonical_sort(out);
  return out;
}

std::vector<AtomSet> solve(const Program& ground, std::optional<std::size_t> limit) {
  return solve(GroundProgram::from_ground(ground), limit);
}

Optimum optimize_family(const GroundProgram& gp, OptimizeMode mode, Deadline deadline) {
  auto r = search(gp, mode == OptimizeMode::AllOptima ? Goal::AllOptima : Goal::FirstOptimum, std::nullopt, deadline);
  Optimum out;
  out.satisfiable = r.family.satisfiable;
  out.cost = r.family.satisfiable ? r.cost : 0;
  out.family = std::move(r.family);
  return out;
}

std::vector<CostedAnswerSet> optimize(const GroundProgram& gp, std::optional<std::size_t> limit) {
  Optimum opt = optimize_family(gp);
  std::vector<AtomSet> sets;
  for (const auto& ids : opt.family.expand(limit)) sets.push_back(gp.to_atoms(ids));
  canonical_sort(sets);
  std::vector<CostedAnswerSet> out;
  for (auto& s : sets) out.push_back({std::move(s), opt.cost});
  return out;
}

std::vector<CostedAnswerSet> optimize(const Program& ground) { return optimize(GroundProgram::from_ground(ground)); }

}  // namespace mrckr::asp
