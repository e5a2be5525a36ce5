#include "gdlsolve/semantics.hpp"

#include <algorithm>

namespace gdlsolve {

namespace {

Term wrap1(const char* functor, const Term& arg) {
  return Term::compound(functor, {arg});
}

}  // namespace

GameSemantics GameSemantics::build(const GdlProgram& p) {
  if (p.roles.empty())
    throw std::invalid_argument("program must be validated before build()");

  GameSemantics g;
  GroundProgram gp = ground(p, {{"base", "true"}, {"input", "does"}});
  gp.compute_strata();
  g.num_atoms_ = gp.atoms.size();

  // facts and static predicates from the empty-state model
  std::vector<int> model0 = stable_model(gp, {});
  std::vector<char> static_truth(g.num_atoms_, 0);
  for (int a : model0) static_truth[a] = 1;

  Term random_t = Term::constant("random");
  int ai = 0;
  for (const Term& r : p.roles)
    if (!(r == random_t)) g.roles_[ai++] = r;
  g.roles_[2] = random_t;

  for (int a : model0) {
    const Term& t = gp.atoms.term(a);
    if (t.kind != Term::Kind::Compound) continue;
    if (t.name == "base" && t.args.size() == 1) g.base_.push_back(t.args[0]);
    if (t.name == "input" && t.args.size() == 2) {
      for (int r = 0; r < 3; ++r)
        if (t.args[0] == g.roles_[r]) g.domains_[r].push_back(t.args[1]);
    }
  }
  std::sort(g.base_.begin(), g.base_.end());
  for (int r = 0; r < 3; ++r) {
    auto& d = g.domains_[r];
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    if (d.empty())
      throw DomainError("no input facts for role " + g.roles_[r].str());
  }

  for (const Term& f : g.base_) {
    g.true_atom_.push_back(gp.atoms.find(wrap1("true", f)));
    g.next_atom_.push_back(gp.atoms.find(wrap1("next", f)));
  }
  for (int a : model0) {
    const Term& t = gp.atoms.term(a);
    if (t.kind == Term::Kind::Compound && t.name == "init" && t.args.size() == 1) {
      auto it = std::lower_bound(g.base_.begin(), g.base_.end(), t.args[0]);
      if (it != g.base_.end() && *it == t.args[0])
        g.init_.push_back(static_cast<int>(it - g.base_.begin()));
    }
  }
  std::sort(g.init_.begin(), g.init_.end());

  for (int r = 0; r < 3; ++r) {
    for (const Term& m : g.domains_[r]) {
      g.does_atom_[r].push_back(gp.atoms.find(Term::compound("does", {g.roles_[r], m})));
      g.legal_atom_[r].push_back(gp.atoms.find(Term::compound("legal", {g.roles_[r], m})));
    }
  }
  g.terminal_atom_ = gp.atoms.find(Term::constant("terminal"));
  for (int a = 0; a < g.num_atoms_; ++a) {
    const Term& t = gp.atoms.term(a);
    if (t.kind == Term::Kind::Compound && t.name == "goal" && t.args.size() == 2 &&
        t.args[1].kind == Term::Kind::Integer) {
      for (int r = 0; r < 3; ++r)
        if (t.args[0] == g.roles_[r]) g.goal_atoms_[r].emplace_back(a, t.args[1].value);
    }
  }

  // compile normal rules sorted by stratum; facts first within each
  std::vector<std::pair<int, const GroundRule*>> ordered;
  for (const GroundRule& r : gp.normal_rules) ordered.emplace_back(gp.strata[r.head], &r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  g.stratum_end_.assign(gp.num_strata, 0);
  for (const auto& [s, r] : ordered) {
    g.rules_.push_back({r->head, r->pos, r->neg});
    for (int k = s; k < gp.num_strata; ++k) g.stratum_end_[k] = static_cast<int>(g.rules_.size());
  }
  return g;
}

int GameSemantics::role_index(const Term& r) const {
  for (int i = 0; i < 3; ++i)
    if (roles_[i] == r) return i;
  throw std::invalid_argument("unknown role " + r.str());
}

void GameSemantics::run_fixpoint(Engine& e) const {
  ++e.evals;
  int begin = 0;
  for (int end : stratum_end_) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = begin; i < end; ++i) {
        const CompiledRule& r = rules_[i];
        if (e.truth[r.head]) continue;
        bool fire = true;
        for (int a : r.pos)
          if (!e.truth[a]) { fire = false; break; }
        if (fire)
          for (int a : r.neg)
            if (e.truth[a]) { fire = false; break; }
        if (fire) {
          e.truth[r.head] = 1;
          changed = true;
        }
      }
    }
    begin = end;
  }
}

GameSemantics::StaticEval GameSemantics::eval(const State& s, Engine& e) const {
  e.truth.assign(num_atoms_, 0);
  for (int b : s)
    if (true_atom_[b] >= 0) e.truth[true_atom_[b]] = 1;
  run_fixpoint(e);

  StaticEval out;
  out.terminal = terminal_atom_ >= 0 && e.truth[terminal_atom_];
  for (int r = 0; r < 3; ++r) {
    for (size_t m = 0; m < legal_atom_[r].size(); ++m)
      if (legal_atom_[r][m] >= 0 && e.truth[legal_atom_[r][m]])
        out.legal[r].push_back(static_cast<int>(m));
    for (const auto& [a, v] : goal_atoms_[r])
      if (e.truth[a]) out.goal[r] = v;
  }
  return out;
}

State GameSemantics::update(const State& s, const std::array<int, 3>& moves,
                            Engine& e) const {
  e.truth.assign(num_atoms_, 0);
  for (int b : s)
    if (true_atom_[b] >= 0) e.truth[true_atom_[b]] = 1;
  for (int r = 0; r < 3; ++r) {
    int a = does_atom_[r][moves[r]];
    if (a >= 0) e.truth[a] = 1;
  }
  run_fixpoint(e);

  State next;
  for (size_t b = 0; b < next_atom_.size(); ++b)
    if (next_atom_[b] >= 0 && e.truth[next_atom_[b]]) next.push_back(static_cast<int>(b));
  return next;
}

std::vector<Term> GameSemantics::legal(const Term& role, const State& s) const {
  Engine e;
  int r = role_index(role);
  StaticEval ev = eval(s, e);
  std::vector<Term> out;
  for (int m : ev.legal[r]) out.push_back(domains_[r][m]);
  return out;
}

bool GameSemantics::terminal(const State& s) const {
  Engine e;
  return eval(s, e).terminal;
}

std::optional<long long> GameSemantics::goal_value(const Term& role, const State& s) const {
  Engine e;
  return eval(s, e).goal[role_index(role)];
}

State GameSemantics::update(const State& s, const std::array<Term, 3>& joint) const {
  Engine e;
  std::array<int, 3> moves{};
  for (int r = 0; r < 3; ++r) {
    const auto& d = domains_[r];
    auto it = std::find(d.begin(), d.end(), joint[r]);
    if (it == d.end())
      throw DomainError("move " + joint[r].str() + " not in the domain of " +
                        roles_[r].str());
    moves[r] = static_cast<int>(it - d.begin());
  }
  StaticEval ev = eval(s, e);
  for (int r = 0; r < 3; ++r)
    if (!std::binary_search(ev.legal[r].begin(), ev.legal[r].end(), moves[r]))
      throw NoLegalMove("move " + joint[r].str() + " is not legal for " +
                        roles_[r].str());
  return update(s, moves, e);
}

std::string GameSemantics::state_str(const State& s) const {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += base_[s[i]].str();
  }
  return out + "}";
}

}  // namespace gdlsolve
