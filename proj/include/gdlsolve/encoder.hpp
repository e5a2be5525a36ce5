#pragma once

#include "gdlsolve/quant.hpp"
#include "gdlsolve/rational.hpp"
#include "gdlsolve/semantics.hpp"

namespace gdlsolve {

enum class QuantMethod { Baseline, Dependency };

struct QuantifiedAtom {
  int atom;
  QuantKind kind = QuantKind::Exists;
  Rational p;  // Chance only
};

// Quantifier blocks outermost-first. Block 4i..4i+3 hold E_{2i}, U_i,
// E_{2i+1}, R_i for timestamp i; the final block is the innermost E_{2n}.
struct SqaspProgram {
  GroundProgram program;
  std::vector<std::vector<QuantifiedAtom>> blocks;
  int horizon = 0;

  std::string write() const;  // rules plus _exists/_forall/_chance directives
};

// Fixed action ordering for a role: position k+1 holds ordered_actions[k].
struct ActionOrdering {
  Term role;
  std::vector<Term> ordered_actions;
};

// Temporal copies 0..n with init -> true(.,0), next -> true(.,i+1) and a
// timestamp argument appended to every other predicate. Duplicates produced
// by the init rewrite appear once.
GdlProgram temporal_extension(const GdlProgram& g, int n);

// Move generation and horizon/winning constraints: exactly-one does per role
// per timestamp before the game ends, legality, ended propagation, the
// horizon constraint, and the winning constraint for `maximizer`.
std::vector<Rule> build_pc(const GameSemantics& sem, int n, const Term& maximizer);

// Universal opponent decisions: dec_o bit choices plus one corrective
// constraint per opponent action and timestamp. Empty when the opponent has
// a single action.
std::vector<Rule> build_po(const GameSemantics& sem, int n, const ActionOrdering& opp);

// Legal-action counting chain for random: succ/cdom facts plus count and tol
// rules.
std::vector<Rule> build_plegal(const GameSemantics& sem, int n, const ActionOrdering& rnd);

// Uniform selection: dec_r choices and the forcing constraints that pick the
// j-th legal action with probability 1/i when i actions are legal.
std::vector<Rule> build_pr(const GameSemantics& sem, int n, const ActionOrdering& rnd);

std::vector<std::vector<QuantifiedAtom>> build_prefix(const GroundProgram& p, int n,
                                                      QuantMethod method,
                                                      const Term& xrole,
                                                      const Term& orole);

// The full SQASP program for `maximizer` (treated as player x; the other
// adversarial role minimizes).
SqaspProgram encode(const GdlProgram& g, const GameSemantics& sem, int n,
                    const Term& maximizer, QuantMethod method);

ActionOrdering action_ordering(const GameSemantics& sem, int role);

}  // namespace gdlsolve
