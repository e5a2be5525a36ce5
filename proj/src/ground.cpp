#include "gdlsolve/ground.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace gdlsolve {

int AtomTable::intern(const Term& t) {
  auto [it, added] = ids_.emplace(t, static_cast<int>(terms_.size()));
  if (added) terms_.push_back(t);
  return it->second;
}

int AtomTable::find(const Term& t) const {
  auto it = ids_.find(t);
  return it == ids_.end() ? -1 : it->second;
}

namespace {

using Subst = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Subst& s, const std::string& v) {
  for (const auto& [name, t] : s)
    if (name == v) return &t;
  return nullptr;
}

bool match(const Term& pat, const Term& g, Subst& s) {
  switch (pat.kind) {
    case Term::Kind::Variable: {
      if (const Term* bound = lookup(s, pat.name)) return *bound == g;
      s.emplace_back(pat.name, g);
      return true;
    }
    case Term::Kind::Constant: return g == pat;
    case Term::Kind::Integer: return g == pat;
    case Term::Kind::Compound: {
      if (g.kind != Term::Kind::Compound || g.name != pat.name ||
          g.args.size() != pat.args.size())
        return false;
      for (size_t i = 0; i < pat.args.size(); ++i)
        if (!match(pat.args[i], g.args[i], s)) return false;
      return true;
    }
  }
  return false;
}

Term apply(const Term& pat, const Subst& s) {
  switch (pat.kind) {
    case Term::Kind::Variable: {
      const Term* bound = lookup(s, pat.name);
      if (!bound) throw DomainError("unbound variable " + pat.name);
      return *bound;
    }
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(pat.args.size());
      for (const Term& a : pat.args) args.push_back(apply(a, s));
      return Term::compound(pat.name, std::move(args));
    }
    default: return pat;
  }
}

std::string pred_key(const Term& t) {
  return t.functor() + "/" + std::to_string(t.arity());
}

struct Grounder {
  const GdlProgram& prog;
  std::unordered_map<std::string, std::string> seed_map;

  AtomTable table;
  std::unordered_map<std::string, std::vector<int>> by_pred;
  std::unordered_set<std::string> changed;

  void add_possible(const Term& t) {
    int before = table.size();
    int id = table.intern(t);
    if (id < before) return;
    std::string key = pred_key(t);
    by_pred[key].push_back(id);
    changed.insert(key);
    auto it = seed_map.find(t.functor());
    if (it != seed_map.end()) {
      Term derived = t;
      derived.name = it->second;
      add_possible(derived);
    }
  }

  // enumerate substitutions satisfying the positive body against the
  // possible set
  template <class F>
  void instances(const Rule& r, F&& emit) {
    std::vector<const Term*> pats;
    for (const Literal& l : r.body)
      if (l.positive) pats.push_back(&l.atom);
    Subst s;
    walk(pats, 0, s, emit);
  }

  template <class F>
  void walk(const std::vector<const Term*>& pats, size_t i, Subst& s, F&& emit) {
    if (i == pats.size()) {
      emit(s);
      return;
    }
    const Term& pat = *pats[i];
    auto it = by_pred.find(pred_key(pat));
    if (it == by_pred.end()) return;
    // index-based: atoms added during this walk are candidates too
    std::vector<int>& cands = it->second;
    for (size_t k = 0; k < cands.size(); ++k) {
      size_t mark = s.size();
      if (match(pat, table.term(cands[k]), s)) walk(pats, i + 1, s, emit);
      s.resize(mark);
    }
  }

  GroundProgram run() {
    // possible-atom fixpoint
    bool first = true;
    while (first || !changed.empty()) {
      std::unordered_set<std::string> prev = std::move(changed);
      changed.clear();
      for (const Rule& r : prog.rules) {
        if (r.head_kind == Rule::HeadKind::None) continue;
        if (!first) {
          bool relevant = false;
          for (const Literal& l : r.body)
            if (l.positive && prev.count(pred_key(l.atom))) relevant = true;
          if (!relevant) continue;
        }
        instances(r, [&](const Subst& s) { add_possible(apply(r.head, s)); });
      }
      first = false;
    }

    // emission
    GroundProgram out;
    out.atoms = table;
    std::set<std::tuple<int, int, std::vector<int>, std::vector<int>>> seen;
    for (const Rule& r : prog.rules) {
      instances(r, [&](const Subst& s) {
        GroundRule g;
        if (r.head_kind != Rule::HeadKind::None)
          g.head = out.atoms.find(apply(r.head, s));
        for (const Literal& l : r.body) {
          int id = out.atoms.find(apply(l.atom, s));
          if (l.positive) {
            g.pos.push_back(id);  // always interned: matched against possible
          } else if (id >= 0) {
            g.neg.push_back(id);  // absent => certainly false => literal true
          }
        }
        std::sort(g.pos.begin(), g.pos.end());
        g.pos.erase(std::unique(g.pos.begin(), g.pos.end()), g.pos.end());
        std::sort(g.neg.begin(), g.neg.end());
        g.neg.erase(std::unique(g.neg.begin(), g.neg.end()), g.neg.end());
        // a =/= not a: instance can never fire
        for (int p : g.pos)
          if (std::binary_search(g.neg.begin(), g.neg.end(), p)) return;
        if (!seen.emplace(static_cast<int>(r.head_kind), g.head, g.pos, g.neg).second)
          return;
        switch (r.head_kind) {
          case Rule::HeadKind::Atom: out.normal_rules.push_back(std::move(g)); break;
          case Rule::HeadKind::Choice: out.choice_rules.push_back(std::move(g)); break;
          case Rule::HeadKind::None: out.constraints.push_back(std::move(g)); break;
        }
      });
    }
    return out;
  }
};

}  // namespace

GroundProgram ground(const GdlProgram& p, const std::vector<SeedRelation>& seeds) {
  Grounder g{p};
  for (const SeedRelation& s : seeds) g.seed_map[s.src_pred] = s.dst_pred;
  return g.run();
}

void GroundProgram::compute_strata() {
  int n = atoms.size();
  // adjacency over normal rules only; choice atoms take their values from
  // the caller-supplied inputs
  std::vector<std::vector<std::pair<int, bool>>> adj(n);
  for (const GroundRule& r : normal_rules) {
    for (int b : r.pos) adj[r.head].emplace_back(b, false);
    for (int b : r.neg) adj[r.head].emplace_back(b, true);
  }

  // iterative Tarjan
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<int> stack;
  std::vector<char> on_stack(n, 0);
  int next_index = 0, next_comp = 0;
  struct Frame { int v; size_t edge; };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++].first;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  for (int v = 0; v < n; ++v)
    for (auto [w, neg] : adj[v])
      if (neg && comp[v] == comp[w])
        throw NotStratified("negative cycle through atom " + atoms.term(v).str());

  // longest path over the condensation, +1 on negative edges; Tarjan emits
  // components in reverse topological order so a single sweep suffices
  std::vector<int> comp_stratum(next_comp, 0);
  std::vector<std::pair<int, int>> order(n);
  for (int v = 0; v < n; ++v) order[v] = {comp[v], v};
  std::sort(order.begin(), order.end());
  for (auto [c, v] : order)
    for (auto [w, neg] : adj[v])
      if (comp[w] != c)
        comp_stratum[c] = std::max(comp_stratum[c], comp_stratum[comp[w]] + (neg ? 1 : 0));

  strata.assign(n, 0);
  num_strata = 0;
  for (int v = 0; v < n; ++v) {
    strata[v] = comp_stratum[comp[v]];
    num_strata = std::max(num_strata, strata[v] + 1);
  }
}

std::string GroundProgram::rule_str(const GroundRule& r, Rule::HeadKind kind) const {
  std::ostringstream os;
  if (kind == Rule::HeadKind::Atom) os << atoms.term(r.head).str();
  else if (kind == Rule::HeadKind::Choice) os << '{' << atoms.term(r.head).str() << '}';
  bool any = !r.pos.empty() || !r.neg.empty();
  if (any) {
    if (kind != Rule::HeadKind::None) os << ' ';
    os << ":- ";
    bool sep = false;
    for (int a : r.pos) {
      if (sep) os << ", ";
      os << atoms.term(a).str();
      sep = true;
    }
    for (int a : r.neg) {
      if (sep) os << ", ";
      os << "not " << atoms.term(a).str();
      sep = true;
    }
  }
  os << '.';
  return os.str();
}

std::string GroundProgram::dump() const {
  std::ostringstream os;
  GroundProgram copy = *this;
  if (copy.strata.empty()) copy.compute_strata();
  os << "% #strata " << copy.num_strata << '\n';
  for (int s = 0; s < copy.num_strata; ++s) {
    os << "% #stratum " << s << ':';
    for (int a = 0; a < copy.atoms.size(); ++a)
      if (copy.strata[a] == s) os << ' ' << copy.atoms.term(a).str();
    os << '\n';
  }
  for (const GroundRule& r : normal_rules) os << rule_str(r, Rule::HeadKind::Atom) << '\n';
  for (const GroundRule& r : choice_rules) os << rule_str(r, Rule::HeadKind::Choice) << '\n';
  for (const GroundRule& r : constraints) os << rule_str(r, Rule::HeadKind::None) << '\n';
  return os.str();
}

std::vector<int> stable_model(GroundProgram& p, const std::vector<int>& inputs) {
  if (p.strata.empty() && !p.normal_rules.empty()) p.compute_strata();
  if (p.strata.empty()) p.strata.assign(p.atoms.size(), 0), p.num_strata = 1;

  std::vector<char> truth(p.atoms.size(), 0);
  for (int a : inputs) truth[a] = 1;

  std::vector<std::vector<const GroundRule*>> by_stratum(p.num_strata);
  for (const GroundRule& r : p.normal_rules)
    by_stratum[p.strata[r.head]].push_back(&r);

  for (auto& rules : by_stratum) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const GroundRule* r : rules) {
        if (truth[r->head]) continue;
        bool fire = true;
        for (int a : r->pos)
          if (!truth[a]) { fire = false; break; }
        if (fire)
          for (int a : r->neg)
            if (truth[a]) { fire = false; break; }
        if (fire) {
          truth[r->head] = 1;
          changed = true;
        }
      }
    }
  }

  for (const GroundRule& c : p.constraints) {
    bool fire = true;
    for (int a : c.pos)
      if (!truth[a]) { fire = false; break; }
    if (fire)
      for (int a : c.neg)
        if (truth[a]) { fire = false; break; }
    if (fire)
      throw ConstraintViolation("violated: " + p.rule_str(c, Rule::HeadKind::None));
  }

  std::vector<int> model;
  for (int a = 0; a < p.atoms.size(); ++a)
    if (truth[a]) model.push_back(a);
  return model;
}

}  // namespace gdlsolve
