#include "gdlsolve/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gdlsolve {
namespace {

const char* kReserved[] = {"ended", "dec_o", "dec_r", "succ", "count", "tol", "cdom"};

Term ts(int t) { return Term::integer(t); }

Term ended(int t) { return Term::compound("ended", {ts(t)}); }

Term does3(const Term& role, const Term& a, int t) {
  return Term::compound("does", {role, a, ts(t)});
}

Term legal3(const Term& role, const Term& a, int t) {
  return Term::compound("legal", {role, a, ts(t)});
}

Literal pos(Term t) { return {std::move(t), true}; }
Literal neg(Term t) { return {std::move(t), false}; }

Rule fact(Term head) {
  Rule r;
  r.head = std::move(head);
  return r;
}

Rule constraint(std::vector<Literal> body) {
  Rule r;
  r.head_kind = Rule::HeadKind::None;
  r.body = std::move(body);
  return r;
}

Rule choice(Term head, std::vector<Literal> body = {}) {
  Rule r;
  r.head_kind = Rule::HeadKind::Choice;
  r.head = std::move(head);
  r.body = std::move(body);
  return r;
}

// timestamp-appending rewrite of one term at copy i
Term extend_term(const Term& t, int i, bool in_head) {
  if (t.kind == Term::Kind::Compound || t.kind == Term::Kind::Constant) {
    std::string f = t.functor();
    if (f == "init")
      return Term::compound("true", {t.args[0], ts(0)});
    if (f == "next")
      return Term::compound("true", {t.args[0], ts(i + 1)});
    std::vector<Term> args = t.args;
    args.push_back(ts(i));
    return Term::compound(t.name, std::move(args));
  }
  (void)in_head;
  return t;
}

}  // namespace

GdlProgram temporal_extension(const GdlProgram& g, int n) {
  GdlProgram out;
  std::set<std::string> seen;
  for (int i = 0; i <= n; ++i) {
    for (const Rule& r : g.rules) {
      Rule c;
      c.head_kind = r.head_kind;
      if (r.head_kind != Rule::HeadKind::None) c.head = extend_term(r.head, i, true);
      for (const Literal& l : r.body)
        c.body.push_back({extend_term(l.atom, i, false), l.positive});
      if (seen.insert(c.str()).second) out.rules.push_back(std::move(c));
    }
  }
  return out;
}

ActionOrdering action_ordering(const GameSemantics& sem, int role) {
  // move domains are kept sorted by display string, which is the fixed
  // ordering everywhere
  return {sem.roles()[role], sem.move_domain(role)};
}

std::vector<Rule> build_pc(const GameSemantics& sem, int n, const Term& maximizer) {
  std::vector<Rule> out;
  for (int t = 0; t < n; ++t) {
    for (int r = 0; r < 3; ++r) {
      const Term& role = sem.roles()[r];
      const auto& dom = sem.move_domain(r);
      // rule (1) expanded: choice + pairwise at-most-one + at-least-one
      for (const Term& a : dom)
        out.push_back(choice(does3(role, a, t), {neg(ended(t))}));
      for (size_t i = 0; i < dom.size(); ++i)
        for (size_t j = i + 1; j < dom.size(); ++j)
          out.push_back(constraint({pos(does3(role, dom[i], t)), pos(does3(role, dom[j], t))}));
      std::vector<Literal> alo{neg(ended(t))};
      for (const Term& a : dom) alo.push_back(neg(does3(role, a, t)));
      out.push_back(constraint(std::move(alo)));
      // rule (2)
      for (const Term& a : dom)
        out.push_back(constraint({neg(legal3(role, a, t)), pos(does3(role, a, t))}));
    }
  }
  for (int t = 0; t <= n; ++t) {
    // rules (3), (4)
    out.push_back([&] {
      Rule r = fact(ended(t));
      r.body.push_back(pos(Term::compound("terminal", {ts(t)})));
      return r;
    }());
    if (t > 0) {
      Rule r = fact(ended(t));
      r.body.push_back(pos(ended(t - 1)));
      out.push_back(std::move(r));
    }
    // rule (6); ended(-1) is false, so the t=0 instance drops the literal
    std::vector<Literal> win{
        neg(Term::compound("goal", {maximizer, Term::integer(100), ts(t)})),
        pos(ended(t))};
    if (t > 0) win.push_back(neg(ended(t - 1)));
    out.push_back(constraint(std::move(win)));
  }
  // rule (5)
  out.push_back(constraint({neg(ended(n))}));
  return out;
}

std::vector<Rule> build_po(const GameSemantics& sem, int n, const ActionOrdering& opp) {
  std::vector<Rule> out;
  size_t m = opp.ordered_actions.size();
  if (m <= 1) return out;
  int bits = static_cast<int>(std::ceil(std::log2(static_cast<double>(m))));
  for (int t = 0; t < n; ++t) {
    // rule (7)
    for (int l = 1; l <= bits; ++l)
      out.push_back(choice(Term::compound("dec_o", {ts(l), ts(t)})));
    // rule (8): bit k of ord-1 carries weight 2^(k-1)
    for (size_t idx = 0; idx < m; ++idx) {
      const Term& a = opp.ordered_actions[idx];
      std::vector<Literal> body{neg(does3(opp.role, a, t)),
                                pos(legal3(opp.role, a, t)), neg(ended(t))};
      for (int k = 1; k <= bits; ++k) {
        Term dec = Term::compound("dec_o", {ts(k), ts(t)});
        if (idx >> (k - 1) & 1) body.push_back(pos(std::move(dec)));
        else body.push_back(neg(std::move(dec)));
      }
      out.push_back(constraint(std::move(body)));
    }
  }
  return out;
}

std::vector<Rule> build_plegal(const GameSemantics& sem, int n, const ActionOrdering& rnd) {
  std::vector<Rule> out;
  const auto& acts = rnd.ordered_actions;
  size_t m = acts.size();
  // rule (9)
  for (size_t i = 0; i + 1 < m; ++i)
    out.push_back(fact(Term::compound("succ", {acts[i], acts[i + 1]})));
  for (size_t i = 1; i <= m; ++i)
    out.push_back(fact(Term::compound("cdom", {ts(static_cast<int>(i))})));

  Term va = Term::variable("A"), vb = Term::variable("B"), vn = Term::variable("N");
  for (int t = 0; t < n; ++t) {
    // rules (10), (11)
    out.push_back([&] {
      Rule r = fact(Term::compound("count", {acts[0], ts(0), ts(t)}));
      r.body.push_back(neg(legal3(rnd.role, acts[0], t)));
      return r;
    }());
    out.push_back([&] {
      Rule r = fact(Term::compound("count", {acts[0], ts(1), ts(t)}));
      r.body.push_back(pos(legal3(rnd.role, acts[0], t)));
      return r;
    }());
    if (m >= 2) {
      // rule (12)
      Rule skip = fact(Term::compound("count", {vb, vn, ts(t)}));
      skip.body.push_back(pos(Term::compound("succ", {va, vb})));
      skip.body.push_back(neg(Term::compound("legal", {rnd.role, vb, ts(t)})));
      skip.body.push_back(pos(Term::compound("count", {va, vn, ts(t)})));
      out.push_back(std::move(skip));
      // rule (13), one instance per N with N-1 pre-resolved
      for (int nn = 1; nn <= static_cast<int>(m); ++nn) {
        Rule step = fact(Term::compound("count", {vb, ts(nn), ts(t)}));
        step.body.push_back(pos(Term::compound("count", {va, ts(nn - 1), ts(t)})));
        step.body.push_back(pos(Term::compound("succ", {va, vb})));
        step.body.push_back(pos(Term::compound("legal", {rnd.role, vb, ts(t)})));
        step.body.push_back(pos(Term::compound("cdom", {ts(nn)})));
        out.push_back(std::move(step));
      }
    }
    // rule (14)
    Rule tol = fact(Term::compound("tol", {vn, ts(t)}));
    tol.body.push_back(pos(Term::compound("count", {acts[m - 1], vn, ts(t)})));
    out.push_back(std::move(tol));
  }
  (void)sem;
  return out;
}

std::vector<Rule> build_pr(const GameSemantics& sem, int n, const ActionOrdering& rnd) {
  std::vector<Rule> out;
  int m = static_cast<int>(rnd.ordered_actions.size());
  if (m < 2) return out;  // the single-action case is covered by P_c
  Term va = Term::variable("A");
  for (int t = 0; t < n; ++t) {
    // rule (15)
    for (int k = 1; k <= m; ++k)
      out.push_back(choice(Term::compound("dec_r", {ts(k), ts(t)})));
    // rule (16)
    for (int i = 2; i <= m; ++i) {
      for (int j = 1; j <= i; ++j) {
        std::vector<Literal> body{neg(Term::compound("does", {rnd.role, va, ts(t)})),
                                  pos(Term::compound("legal", {rnd.role, va, ts(t)})),
                                  pos(Term::compound("count", {va, ts(j), ts(t)})),
                                  neg(ended(t)),
                                  pos(Term::compound("tol", {ts(i), ts(t)}))};
        for (int k = i; k > j; --k)
          body.push_back(neg(Term::compound("dec_r", {ts(k), ts(t)})));
        body.push_back(pos(Term::compound("dec_r", {ts(j), ts(t)})));
        out.push_back(constraint(std::move(body)));
      }
    }
  }
  (void)sem;
  return out;
}

namespace {

struct AtomClass {
  bool is_choice = false;
  QuantKind kind = QuantKind::Exists;
  int level = -1;   // 2i / 2i+1 / 2i+2 map used by the dependency method
  int block = -1;   // global block index
  Rational p;
};

AtomClass classify(const Term& t, int n, const Term& xrole, const Term& orole) {
  AtomClass c;
  if (t.kind != Term::Kind::Compound) return c;
  auto stamp = [&](const Term& arg) -> int {
    return arg.kind == Term::Kind::Integer ? static_cast<int>(arg.value) : -1;
  };
  if (t.name == "does" && t.args.size() == 3) {
    int i = stamp(t.args[2]);
    if (i < 0 || i >= n) return c;
    c.is_choice = true;
    c.kind = QuantKind::Exists;
    if (t.args[0] == xrole) {
      c.level = 2 * i;
      c.block = 4 * i;  // E_{2i}
    } else if (t.args[0] == orole) {
      c.level = 2 * i + 1;
      c.block = 4 * i + 2;  // E_{2i+1}
    } else {
      c.level = 2 * i + 2;
      c.block = i + 1 < n ? 4 * (i + 1) : 4 * n;  // E_{2i+2}
    }
  } else if (t.name == "dec_o" && t.args.size() == 2) {
    int i = stamp(t.args[1]);
    if (i < 0 || i >= n) return c;
    c.is_choice = true;
    c.kind = QuantKind::Forall;
    c.level = 2 * i + 1;
    c.block = 4 * i + 1;  // U_i
  } else if (t.name == "dec_r" && t.args.size() == 2) {
    int i = stamp(t.args[1]);
    int x = stamp(t.args[0]);
    if (i < 0 || i >= n || x < 1) return c;
    c.is_choice = true;
    c.kind = QuantKind::Chance;
    c.level = 2 * i + 2;
    c.block = 4 * i + 3;  // R_i
    c.p = rational(1, x);
  }
  return c;
}

int exists_block(int level, int n) { return level >= 2 * n ? 4 * n : 2 * level; }

}  // namespace

std::vector<std::vector<QuantifiedAtom>> build_prefix(const GroundProgram& p, int n,
                                                      QuantMethod method,
                                                      const Term& xrole,
                                                      const Term& orole) {
  int natoms = p.atoms.size();
  std::vector<AtomClass> cls(natoms);
  for (int a = 0; a < natoms; ++a) cls[a] = classify(p.atoms.term(a), n, xrole, orole);

  std::vector<std::vector<QuantifiedAtom>> blocks(4 * n + 1);
  std::vector<int> dep_level;

  if (method == QuantMethod::Dependency) {
    // head -> body edges, both polarities, over every rule kind
    std::vector<std::vector<int>> adj(natoms);
    auto add_edges = [&](const std::vector<GroundRule>& rules) {
      for (const GroundRule& r : rules) {
        if (r.head < 0) continue;
        for (int b : r.pos) adj[r.head].push_back(b);
        for (int b : r.neg) adj[r.head].push_back(b);
      }
    };
    add_edges(p.normal_rules);
    add_edges(p.choice_rules);

    // max level of any reachable choice atom; -1 when none is reachable
    dep_level.assign(natoms, -1);
    for (int a = 0; a < natoms; ++a)
      if (cls[a].is_choice) dep_level[a] = cls[a].level;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a = 0; a < natoms; ++a)
        for (int b : adj[a])
          if (dep_level[b] > dep_level[a]) {
            dep_level[a] = dep_level[b];
            changed = true;
          }
    }
  }

  for (int a = 0; a < natoms; ++a) {
    const AtomClass& c = cls[a];
    if (c.is_choice) {
      blocks[c.block].push_back({a, c.kind, c.p});
    } else if (method == QuantMethod::Baseline) {
      blocks[4 * n].push_back({a, QuantKind::Exists, {}});
    } else {
      int lvl = std::max(dep_level[a], 0);
      blocks[exists_block(lvl, n)].push_back({a, QuantKind::Exists, {}});
    }
  }
  // within a block: interned id order (atoms were appended in id order)
  return blocks;
}

SqaspProgram encode(const GdlProgram& g, const GameSemantics& sem, int n,
                    const Term& maximizer, QuantMethod method) {
  for (const Rule& r : g.rules) {
    auto uses = [&](const Term& t, auto&& self) -> bool {
      for (const char* res : kReserved)
        if (t.functor() == res) return true;
      for (const Term& a : t.args)
        if (self(a, self)) return true;
      return false;
    };
    if ((r.head_kind != Rule::HeadKind::None && uses(r.head, uses)))
      throw ValidityError("reserved predicate in game description: " + r.str());
    for (const Literal& l : r.body)
      if (uses(l.atom, uses))
        throw ValidityError("reserved predicate in game description: " + l.str());
  }

  int max_role = sem.role_index(maximizer);
  if (max_role == sem.random_index())
    throw std::invalid_argument("random cannot be the maximizer");
  int min_role = 1 - max_role;
  const Term& xrole = sem.roles()[max_role];
  const Term& orole = sem.roles()[min_role];

  GdlProgram ext = temporal_extension(g, n);
  auto append = [&ext](std::vector<Rule> rs) {
    for (Rule& r : rs) ext.rules.push_back(std::move(r));
  };
  ActionOrdering opp = action_ordering(sem, min_role);
  ActionOrdering rnd = action_ordering(sem, sem.random_index());
  append(build_pc(sem, n, xrole));
  append(build_po(sem, n, opp));
  append(build_plegal(sem, n, rnd));
  append(build_pr(sem, n, rnd));

  SqaspProgram out;
  out.horizon = n;
  out.program = ground(ext);
  out.blocks = build_prefix(out.program, n, method, xrole, orole);
  return out;
}

std::string SqaspProgram::write() const {
  std::ostringstream os;
  for (const GroundRule& r : program.normal_rules)
    os << program.rule_str(r, Rule::HeadKind::Atom) << '\n';
  for (const GroundRule& r : program.choice_rules)
    os << program.rule_str(r, Rule::HeadKind::Choice) << '\n';
  for (const GroundRule& r : program.constraints)
    os << program.rule_str(r, Rule::HeadKind::None) << '\n';
  for (size_t level = 0; level < blocks.size(); ++level) {
    for (const QuantifiedAtom& q : blocks[level]) {
      const std::string atom = program.atoms.term(q.atom).str();
      switch (q.kind) {
        case QuantKind::Exists:
          os << "_exists(" << level << ", " << atom << ").\n";
          break;
        case QuantKind::Forall:
          os << "_forall(" << level << ", " << atom << ").\n";
          break;
        case QuantKind::Chance:
          os << "_chance(" << level << ", " << q.p.get_num().get_str() << ", "
             << q.p.get_den().get_str() << ", " << atom << ").\n";
          break;
      }
    }
  }
  return os.str();
}

}  // namespace gdlsolve
