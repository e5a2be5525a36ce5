#pragma once

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gdlsolve/ground.hpp"
#include "gdlsolve/lp2cnf.hpp"
#include "gdlsolve/xssat.hpp"

namespace testing {

inline std::string corpus_dir() { return GDLSOLVE_CORPUS_DIR; }

inline std::string corpus_file(const std::string& name) {
  return corpus_dir() + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// deterministic xorshift generator so oracle suites are reproducible
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed) : s(seed ^ 0x2545f4914f6cdd1dULL) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

// Random tight ground program: positive body atoms only reference
// strictly smaller atom ids, so the positive dependency graph is acyclic.
inline gdlsolve::GroundProgram random_tight_program(Rng& rng, int max_atoms = 12,
                                                    int max_rules = 20) {
  gdlsolve::GroundProgram p;
  int n = 2 + rng.below(max_atoms - 1);
  for (int i = 0; i < n; ++i)
    p.atoms.intern(gdlsolve::Term::constant("a" + std::to_string(i)));
  int nrules = 1 + rng.below(max_rules);
  for (int i = 0; i < nrules; ++i) {
    gdlsolve::GroundRule r;
    int kind = rng.below(8);  // 0-4 normal, 5-6 choice, 7 constraint
    if (kind <= 6) r.head = rng.below(n);
    std::set<int> pos, neg;
    int blen = rng.below(4);
    for (int b = 0; b < blen; ++b) {
      int a = rng.below(n);
      if (rng.below(2) == 0 && (kind == 7 || a < r.head))
        pos.insert(a);
      else if (a != r.head || kind == 7)
        neg.insert(a);
    }
    for (int a : pos) neg.erase(a);
    r.pos.assign(pos.begin(), pos.end());
    r.neg.assign(neg.begin(), neg.end());
    if (kind <= 4) p.normal_rules.push_back(std::move(r));
    else if (kind <= 6) p.choice_rules.push_back(std::move(r));
    else p.constraints.push_back(std::move(r));
  }
  return p;
}

// Brute-force stable models: X is stable iff it is a subset-minimal model of
// the program with every literal unsatisfied by X replaced by falsum.
inline std::set<std::vector<int>> brute_force_stable_models(const gdlsolve::GroundProgram& p) {
  int n = p.atoms.size();
  auto in = [](uint32_t x, int a) { return (x >> a) & 1u; };

  // returns true when Y satisfies the X-reduct
  auto models_reduct = [&](uint32_t x, uint32_t y) {
    auto rule_ok = [&](const gdlsolve::GroundRule& r, bool choice, bool constraint) {
      for (int a : r.pos)
        if (!in(x, a) || !in(y, a)) return true;  // body literal falsified
      for (int a : r.neg)
        if (in(x, a)) return true;  // "not a" replaced by falsum
      // body satisfied by Y
      if (constraint) return false;
      if (choice) {
        // head p or (not p); "not p" survives the reduct iff p is outside X
        return in(y, r.head) || !in(x, r.head);
      }
      return in(y, r.head) != 0;
    };
    for (const auto& r : p.normal_rules)
      if (!rule_ok(r, false, false)) return false;
    for (const auto& r : p.choice_rules)
      if (!rule_ok(r, true, false)) return false;
    for (const auto& r : p.constraints)
      if (!rule_ok(r, false, true)) return false;
    return true;
  };

  std::set<std::vector<int>> out;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    if (!models_reduct(x, x)) continue;
    bool minimal = true;
    // proper subsets of x
    for (uint32_t y = (x - 1) & x; minimal && x != 0; y = (y - 1) & x) {
      if (models_reduct(x, y)) minimal = false;
      if (y == 0) break;
    }
    if (!minimal) continue;
    std::vector<int> model;
    for (int a = 0; a < n; ++a)
      if (in(x, a)) model.push_back(a);
    out.insert(std::move(model));
  }
  return out;
}

// Projection of the completion CNF onto the atom variables. Aux variables are
// Tseitin-defined, so unit propagation after fixing the atoms decides them.
inline std::set<std::vector<int>> cnf_projected_models(const gdlsolve::CnfFormula& cnf,
                                                       const gdlsolve::VarMap& vm) {
  std::set<std::vector<int>> out;
  int n = vm.num_atoms;
  for (uint32_t x = 0; x < (1u << n); ++x) {
    std::vector<int> val(vm.num_vars() + 1, 0);  // 0 unknown, +1 true, -1 false
    for (int a = 0; a < n; ++a) val[a + 1] = ((x >> a) & 1u) ? 1 : -1;
    bool conflict = false, changed = true;
    while (changed && !conflict) {
      changed = false;
      for (const auto& cl : cnf.clauses) {
        int unassigned = 0, last = 0;
        bool sat = false;
        for (int l : cl) {
          int v = val[std::abs(l)];
          if (v == 0) { ++unassigned; last = l; }
          else if ((l > 0) == (v > 0)) { sat = true; break; }
        }
        if (sat) continue;
        if (unassigned == 0) { conflict = true; break; }
        if (unassigned == 1) {
          val[std::abs(last)] = last > 0 ? 1 : -1;
          changed = true;
        }
      }
    }
    if (conflict) continue;
    bool complete = true, sat_all = true;
    for (const auto& cl : cnf.clauses) {
      bool sat = false, open = false;
      for (int l : cl) {
        int v = val[std::abs(l)];
        if (v == 0) open = true;
        else if ((l > 0) == (v > 0)) { sat = true; break; }
      }
      if (!sat) { (open ? complete : sat_all) = false; }
    }
    if (!complete || !sat_all) continue;  // propagation decides every aux var
    std::vector<int> model;
    for (int a = 0; a < n; ++a)
      if ((x >> a) & 1u) model.push_back(a);
    out.insert(std::move(model));
  }
  return out;
}

// Textbook recursion over the prefix, no propagation or caching.
inline gdlsolve::Rational naive_xssat(const gdlsolve::XssatFormula& f) {
  using gdlsolve::QuantKind;
  using gdlsolve::Rational;
  std::vector<int> val;
  int maxv = 0;
  for (const auto& q : f.prefix) maxv = std::max(maxv, q.var);
  val.assign(maxv + 1, 0);

  auto rec = [&](auto&& self, size_t i) -> Rational {
    if (i == f.prefix.size()) {
      for (const auto& cl : f.clauses.clauses) {
        bool sat = false;
        for (int l : cl)
          if (val[std::abs(l)] == (l > 0 ? 1 : -1)) { sat = true; break; }
        if (!sat) return 0;
      }
      return 1;
    }
    const auto& q = f.prefix[i];
    val[q.var] = 1;
    Rational t = self(self, i + 1);
    val[q.var] = -1;
    Rational fv = self(self, i + 1);
    val[q.var] = 0;
    switch (q.kind) {
      case QuantKind::Exists: return std::max(t, fv);
      case QuantKind::Forall: return std::min(t, fv);
      default: return q.p * t + (Rational(1) - q.p) * fv;
    }
  };
  return rec(rec, 0);
}

inline gdlsolve::XssatFormula random_xssat_formula(Rng& rng, int max_vars = 16,
                                                   int max_clauses = 40) {
  using gdlsolve::QuantKind;
  gdlsolve::XssatFormula f;
  int n = 2 + rng.below(max_vars - 1);
  const gdlsolve::Rational probs[] = {gdlsolve::rational(1, 2), gdlsolve::rational(1, 3),
                                      gdlsolve::rational(2, 3), gdlsolve::rational(1, 4)};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  for (int v : order) {
    int k = rng.below(3);
    gdlsolve::XssatQuant q;
    q.var = v;
    q.kind = k == 0 ? QuantKind::Exists : k == 1 ? QuantKind::Forall : QuantKind::Chance;
    if (q.kind == QuantKind::Chance) q.p = probs[rng.below(4)];
    f.prefix.push_back(q);
  }
  f.clauses.num_vars = n;
  int m = 1 + rng.below(max_clauses);
  for (int c = 0; c < m; ++c) {
    std::set<int> lits;
    int len = 1 + rng.below(4);
    for (int i = 0; i < len; ++i) {
      int v = 1 + rng.below(n);
      lits.insert(rng.below(2) ? v : -v);
    }
    f.clauses.clauses.emplace_back(lits.begin(), lits.end());
  }
  return f;
}

// One-step game where random has `actions` always-legal moves and x wins iff
// random plays r<winner>; under uniform selection its value is 1/actions.
inline std::string uniform_game(int actions, int winner) {
  std::ostringstream os;
  os << "role(x). role(o). role(random). init(s). base(s). base(win).\n"
        "input(x,go). input(o,noop).\n";
  for (int k = 1; k <= actions; ++k) os << "input(random,r" << k << ").\n";
  os << "legal(R,A) :- input(R,A).\n"
        "next(win) :- does(random,r" << winner << ").\n"
        "terminal :- not true(s).\n"
        "goal(x,100) :- true(win).\n";
  return os.str();
}

}  // namespace testing
