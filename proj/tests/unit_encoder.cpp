#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdlsolve/encoder.hpp"
#include "gdlsolve/parser.hpp"
#include "gdlsolve/pipeline.hpp"
#include "gdlsolve/validate.hpp"
#include "helpers.hpp"

using namespace gdlsolve;

namespace {

struct Game {
  GdlProgram program;
  GameSemantics sem;
};

Game load_text(const std::string& text) {
  GdlProgram p = parse_gdl(text);
  validate(p);
  GameSemantics sem = GameSemantics::build(p);
  return {std::move(p), std::move(sem)};
}

Game load(const std::string& name) {
  return load_text(testing::slurp(testing::corpus_file(name)));
}

std::string atom_str(const SqaspProgram& sp, const QuantifiedAtom& q) {
  return sp.program.atoms.term(q.atom).str();
}

}  // namespace

TEST_CASE("temporal extension timestamps and links next to true") {
  Game g = load("toy.gdl");
  GdlProgram ext = temporal_extension(g.program, 1);
  std::string all = ext.str();
  CHECK(all.find("true(step(0),0).") != std::string::npos);
  CHECK(all.find("next(") == std::string::npos);
  CHECK(all.find("true(win,1) :- does(x,le,0), does(random,a,0).") != std::string::npos);
  CHECK(all.find("terminal(0) :- not true(step(0),0).") != std::string::npos);
  CHECK(all.find("terminal(1) :- not true(step(0),1).") != std::string::npos);
  // duplicates from the init rewrite appear once
  GdlProgram ext2 = temporal_extension(g.program, 2);
  int inits = 0;
  for (const Rule& r : ext2.rules)
    if (r.str() == "true(step(0),0).") ++inits;
  CHECK(inits == 1);
}

TEST_CASE("action ordering follows the move domain") {
  Game g = load("toy.gdl");
  ActionOrdering rnd = action_ordering(g.sem, 2);
  REQUIRE(rnd.ordered_actions.size() == 3);
  CHECK(rnd.ordered_actions[0].str() == "a");
  CHECK(rnd.role.str() == "random");
}

TEST_CASE("baseline prefix block shape") {
  Game g = load("toy.gdl");
  SqaspProgram sp = encode(g.program, g.sem, 1, g.sem.roles()[0], QuantMethod::Baseline);
  REQUIRE(sp.blocks.size() == 5);  // E0 U0 E1 R0 E2 for n=1

  // E0: the maximizer's two timestamp-0 action atoms
  REQUIRE(sp.blocks[0].size() == 2);
  for (const auto& q : sp.blocks[0]) {
    CHECK(q.kind == QuantKind::Exists);
    CHECK(atom_str(sp, q).rfind("does(x,", 0) == 0);
  }
  // U0: empty, the opponent has a single action
  CHECK(sp.blocks[1].empty());
  // E1: the opponent's noop atom
  REQUIRE(sp.blocks[2].size() == 1);
  CHECK(atom_str(sp, sp.blocks[2][0]) == "does(o,noop,0)");
  // R0: dec_r(k,0) with chance 1/k, k = 1..3
  REQUIRE(sp.blocks[3].size() == 3);
  for (const auto& q : sp.blocks[3]) {
    CHECK(q.kind == QuantKind::Chance);
    std::string a = atom_str(sp, q);
    REQUIRE(a.rfind("dec_r(", 0) == 0);
    int k = a[6] - '0';
    CHECK(q.p == rational(1, k));
  }
  // E2: everything else, baseline keeps all non-choice atoms innermost
  CHECK(sp.blocks[4].size() ==
        sp.program.atoms.size() - 2 - 1 - 3);
  for (const auto& q : sp.blocks[4]) CHECK(q.kind == QuantKind::Exists);
}

TEST_CASE("opponent bit choices appear for three or more actions") {
  Game g = load("micro.gdl");
  SqaspProgram sp = encode(g.program, g.sem, 1, g.sem.roles()[0], QuantMethod::Baseline);
  // o has 3 actions: two universal bit atoms in U0
  REQUIRE(sp.blocks[1].size() == 2);
  for (const auto& q : sp.blocks[1]) {
    CHECK(q.kind == QuantKind::Forall);
    CHECK(atom_str(sp, q).rfind("dec_o(", 0) == 0);
  }
  std::string text = sp.write();
  CHECK(text.find("_forall(1, dec_o(1,0)).") != std::string::npos);
  CHECK(text.find("_chance(3, 1, 2, dec_r(2,0)).") != std::string::npos);
  CHECK(text.find("_exists(0, does(x,noop,0)).") != std::string::npos);
}

TEST_CASE("dependency method hoists determined atoms") {
  Game g = load("tt3_first.gdl");
  SqaspProgram base = encode(g.program, g.sem, 2, g.sem.roles()[0], QuantMethod::Baseline);
  SqaspProgram dep = encode(g.program, g.sem, 2, g.sem.roles()[0], QuantMethod::Dependency);
  REQUIRE(base.blocks.size() == 9);
  REQUIRE(dep.blocks.size() == 9);
  // same atoms overall, identical choice blocks
  for (size_t b = 0; b < 9; b += 1) {
    if (b == 8) continue;
    if (b % 2 == 0) continue;
    REQUIRE(base.blocks[b].size() == dep.blocks[b].size());
  }
  // timestamp-0 static atoms move out of the innermost block
  CHECK(dep.blocks[8].size() < base.blocks[8].size());
  CHECK(dep.blocks[0].size() > base.blocks[0].size());
  bool found = false;
  for (const auto& q : dep.blocks[0])
    if (atom_str(dep, q) == "true(control(x),0)") found = true;
  CHECK(found);
}

TEST_CASE("reserved predicates are rejected") {
  Game g = load_text(
      "role(x). role(o). role(random). init(s). base(s).\n"
      "succ(a,b). input(x,go). input(o,noop). input(random,n).\n"
      "legal(R,A) :- input(R,A).\n"
      "terminal :- not true(s). goal(x,100) :- true(s).\n");
  CHECK_THROWS_AS(encode(g.program, g.sem, 1, g.sem.roles()[0], QuantMethod::Baseline),
                  ValidityError);
}

TEST_CASE("random as maximizer is rejected") {
  Game g = load("toy.gdl");
  CHECK_THROWS_AS(encode(g.program, g.sem, 1, Term::constant("random"),
                         QuantMethod::Baseline),
                  std::invalid_argument);
}

TEST_CASE("uniform selection: brute force over dec_r assignments") {
  // The encoded value under a fixed dec_r assignment is 1 exactly when the
  // selected action (the highest true dec_r index) wins for x. Sweeping the
  // winning action over all positions pins both the selection rule and the
  // 1/k probability chain.
  for (int i = 2; i <= 6; ++i) {
    CAPTURE(i);
    for (int winner = 1; winner <= i; ++winner) {
      CAPTURE(winner);
      Game g = load_text(testing::uniform_game(i, winner));
      SqaspProgram sp = encode(g.program, g.sem, 1, g.sem.roles()[0], QuantMethod::Baseline);
      XssatFormula f = to_xssat(sp);

      // with chance quantifiers intact, the value is the uniform win chance
      CHECK(evaluate(f) == rational(1, i));

      // dec_r variables with their probabilities, in prefix order
      std::vector<std::pair<int, Rational>> decr;
      for (const XssatQuant& q : f.prefix)
        if (q.kind == QuantKind::Chance) decr.emplace_back(q.var, q.p);
      REQUIRE(static_cast<int>(decr.size()) == i);
      for (int k = 0; k < i; ++k) CHECK(decr[k].second == rational(1, k + 1));

      // demote chance quantifiers to existentials; fix them by unit clauses
      XssatFormula fixed = f;
      for (XssatQuant& q : fixed.prefix)
        if (q.kind == QuantKind::Chance) q.kind = QuantKind::Exists;

      Rational win_mass = 0;
      for (uint32_t s = 0; s < (1u << i); ++s) {
        Rational w = 1;
        XssatFormula probe = fixed;
        for (int k = 0; k < i; ++k) {
          bool on = (s >> k) & 1u;
          w *= on ? decr[k].second : Rational(1) - decr[k].second;
          probe.clauses.clauses.push_back({on ? decr[k].first : -decr[k].first});
        }
        if (w == 0) continue;
        int selected = 0;  // highest true dec_r index, 1-based
        for (int k = i; k >= 1; --k)
          if ((s >> (k - 1)) & 1u) { selected = k; break; }
        REQUIRE(selected > 0);  // dec_r(1) has p=1, so w>0 implies bit 1 set
        CHECK(evaluate(probe) == (selected == winner ? 1 : 0));
        if (selected == winner) win_mass += w;
      }
      CHECK(win_mass == rational(1, i));
    }
  }
}
