#include "gdlsolve/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gdlsolve {

std::vector<CorpusEntry> corpus(const std::string& dir) {
  std::ifstream in(dir + "/manifest");
  if (!in) throw std::runtime_error("cannot open corpus manifest in " + dir);
  std::vector<CorpusEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kv, game, variant, gdl, expected, p;
    int horizon = -1;
    while (ls >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("bad manifest token: " + kv);
      std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
      if (key == "game") game = value;
      else if (key == "variant") variant = value;
      else if (key == "gdl") gdl = value;
      else if (key == "horizon") horizon = std::stoi(value);
      else if (key == "expected") expected = value;
      else if (key == "p") p = value;
      else throw std::runtime_error("unknown manifest key: " + key);
    }
    if (game.empty() || variant.empty() || gdl.empty() || horizon < 0)
      throw std::runtime_error("manifest line missing game/variant/gdl/horizon");
    if (entries.empty() || entries.back().game_id != game) {
      CorpusEntry e;
      e.game_id = game;
      e.horizon = horizon;
      if (!p.empty()) {
        Rational r(p);
        r.canonicalize();
        e.chance_param = r;
      }
      entries.push_back(std::move(e));
    }
    CorpusEntry& e = entries.back();
    if (e.horizon != horizon)
      throw std::runtime_error("variants of " + game + " disagree on horizon");
    CorpusVariant v;
    v.name = variant;
    v.gdl_path = dir + "/" + gdl;
    if (!expected.empty()) v.expected_pct = expected;
    e.variants.push_back(std::move(v));
  }
  return entries;
}

std::string stochastic_nim_gdl(int pile) {
  std::ostringstream os;
  os << "% stochastic nim, initial pile " << pile << ", horizon " << 4 * pile << "\n"
     << "% rounds: x takes, random may add one, o takes, random may add one;\n"
     << "% first to empty the pile wins, draw after " << pile << " rounds\n\n"
     << "role(x). role(o). role(random).\n\n";
  for (int i = 0; i <= pile; ++i) os << "num(" << i << ").";
  os << "\n";
  for (int i = 0; i < pile; ++i) os << "nsucc(" << i << "," << i + 1 << ").";
  os << "\n\n";
  os << "base(pile(N)) :- num(N).\n"
        "base(round(N)) :- num(N).\n"
        "base(phase(p1)). base(phase(p2)). base(phase(p3)). base(phase(p4)).\n\n";
  os << "init(pile(" << pile << ")). init(round(" << pile << ")). init(phase(p1)).\n\n";
  os << "input(x, take(1)). input(x, take(2)). input(x, noop).\n"
        "input(o, take(1)). input(o, take(2)). input(o, noop).\n"
        "input(random, add). input(random, skip). input(random, noop).\n\n"
        "ge2 :- true(pile(P)), nsucc(Q,P), nsucc(R,Q).\n\n"
        "legal(x, take(1)) :- true(phase(p1)).\n"
        "legal(x, take(2)) :- true(phase(p1)), ge2.\n"
        "legal(x, noop) :- true(phase(p2)).\n"
        "legal(x, noop) :- true(phase(p3)).\n"
        "legal(x, noop) :- true(phase(p4)).\n"
        "legal(o, take(1)) :- true(phase(p3)).\n"
        "legal(o, take(2)) :- true(phase(p3)), ge2.\n"
        "legal(o, noop) :- true(phase(p1)).\n"
        "legal(o, noop) :- true(phase(p2)).\n"
        "legal(o, noop) :- true(phase(p4)).\n"
        "legal(random, add) :- true(phase(p2)).\n"
        "legal(random, skip) :- true(phase(p2)).\n"
        "legal(random, add) :- true(phase(p4)).\n"
        "legal(random, skip) :- true(phase(p4)).\n"
        "legal(random, noop) :- true(phase(p1)).\n"
        "legal(random, noop) :- true(phase(p3)).\n\n"
        "next(pile(Q)) :- does(x, take(1)), true(pile(P)), nsucc(Q,P).\n"
        "next(pile(Q)) :- does(x, take(2)), true(pile(P)), nsucc(M,P), nsucc(Q,M).\n"
        "next(pile(Q)) :- does(o, take(1)), true(pile(P)), nsucc(Q,P).\n"
        "next(pile(Q)) :- does(o, take(2)), true(pile(P)), nsucc(M,P), nsucc(Q,M).\n"
        "next(pile(Q)) :- does(random, add), true(pile(P)), nsucc(P,Q).\n"
        "next(pile(P)) :- does(random, skip), true(pile(P)).\n\n"
        "next(phase(p2)) :- true(phase(p1)).\n"
        "next(phase(p3)) :- true(phase(p2)).\n"
        "next(phase(p4)) :- true(phase(p3)).\n"
        "next(phase(p1)) :- true(phase(p4)).\n\n"
        "next(round(R)) :- true(round(R)), not true(phase(p4)).\n"
        "next(round(Q)) :- true(round(R)), true(phase(p4)), nsucc(Q,R).\n\n"
        "terminal :- true(pile(0)).\n"
        "terminal :- true(round(0)).\n\n"
        "goal(x,100) :- true(pile(0)), true(phase(p2)).\n"
        "goal(o,100) :- true(pile(0)), true(phase(p4)).\n";
  return os.str();
}

}  // namespace gdlsolve
