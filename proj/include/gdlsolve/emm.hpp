#pragma once

#include <chrono>
#include <optional>

#include "gdlsolve/rational.hpp"
#include "gdlsolve/semantics.hpp"
#include "gdlsolve/timeout.hpp"

namespace gdlsolve {

struct EmmOptions {
  bool use_cache = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct EmmResult {
  Rational probability;
  std::optional<Term> best_first_move;  // absent when the root is terminal
  uint64_t nodes = 0;
  uint64_t cache_hits = 0;
};

// Exact maximal winning probability for `maximizer` within `horizon` steps,
// minimizing over the other adversarial role and averaging uniformly over
// random's legal moves. Memoized on (state, steps remaining).
class EmmSolver {
 public:
  EmmSolver(const GameSemantics& g, const Term& maximizer, EmmOptions opt = {});

  Rational pxw(const State& s, int steps);
  EmmResult solve(int horizon);

  uint64_t nodes() const { return nodes_; }
  uint64_t cache_hits() const { return cache_hits_; }

 private:
  Rational eval_state(const State& s, int steps);

  const GameSemantics& g_;
  int max_role_, min_role_;
  EmmOptions opt_;
  GameSemantics::Engine engine_;

  struct KeyHash {
    size_t operator()(const std::pair<State, int>& k) const;
  };
  std::unordered_map<std::pair<State, int>, Rational, KeyHash> cache_;
  uint64_t nodes_ = 0, cache_hits_ = 0;
};

EmmResult emm_solve(const GameSemantics& g, const Term& maximizer, int horizon,
                    EmmOptions opt = {});

}  // namespace gdlsolve
