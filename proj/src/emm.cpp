#include "gdlsolve/emm.hpp"

namespace gdlsolve {

size_t EmmSolver::KeyHash::operator()(const std::pair<State, int>& k) const {
  size_t h = std::hash<int>()(k.second);
  for (int b : k.first) h = h * 0x100000001b3ULL ^ static_cast<size_t>(b);
  return h;
}

EmmSolver::EmmSolver(const GameSemantics& g, const Term& maximizer, EmmOptions opt)
    : g_(g), opt_(std::move(opt)) {
  max_role_ = g.role_index(maximizer);
  if (max_role_ == g.random_index())
    throw std::invalid_argument("random cannot be the maximizer");
  min_role_ = 1 - max_role_;
}

Rational EmmSolver::pxw(const State& s, int steps) {
  if ((++nodes_ & 0xfff) == 0 && opt_.deadline &&
      std::chrono::steady_clock::now() > *opt_.deadline)
    throw TimeoutError("deadline exceeded in expectiminimax");

  std::pair<State, int> key;
  if (opt_.use_cache) {
    key = {s, steps};
    auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
  }
  Rational v = eval_state(s, steps);
  if (opt_.use_cache) cache_.emplace(std::move(key), v);
  return v;
}

Rational EmmSolver::eval_state(const State& s, int steps) {
  GameSemantics::StaticEval ev = g_.eval(s, engine_);
  if (ev.terminal)
    return ev.goal[max_role_] && *ev.goal[max_role_] == 100 ? 1 : 0;
  if (steps == 0) return 0;

  for (int r = 0; r < 3; ++r)
    if (ev.legal[r].empty())
      throw NoLegalMove("role " + g_.roles()[r].str() +
                        " has no legal move at nonterminal state " +
                        g_.state_str(s));
  if (ev.legal[max_role_].size() > 1 && ev.legal[min_role_].size() > 1)
    throw TurnTakingViolation("both adversarial roles can move at state " +
                              g_.state_str(s));

  const auto& rnd = ev.legal[g_.random_index()];
  Rational weight(1, static_cast<long>(rnd.size()));

  std::optional<Rational> best;
  for (int mx : ev.legal[max_role_]) {
    std::optional<Rational> worst;
    for (int mn : ev.legal[min_role_]) {
      Rational avg = 0;
      for (int mr : rnd) {
        std::array<int, 3> moves{};
        moves[max_role_] = mx;
        moves[min_role_] = mn;
        moves[g_.random_index()] = mr;
        State next = g_.update(s, moves, engine_);
        avg += pxw(next, steps - 1);
      }
      avg *= weight;
      if (!worst || avg < *worst) worst = std::move(avg);
      if (*worst == 0) break;
    }
    if (!best || *worst > *best) best = std::move(*worst);
    if (*best == 1) break;
  }
  return *best;
}

EmmResult EmmSolver::solve(int horizon) {
  const State& s0 = g_.init();
  EmmResult out;

  GameSemantics::StaticEval ev = g_.eval(s0, engine_);
  if (!ev.terminal && horizon > 0) {
    // replay the outer max at the root to recover the move; child values are
    // cached so this costs one extra pass
    Rational root = pxw(s0, horizon);
    for (int mx : ev.legal[max_role_]) {
      std::optional<Rational> worst;
      for (int mn : ev.legal[min_role_]) {
        Rational avg = 0;
        for (int mr : ev.legal[g_.random_index()]) {
          std::array<int, 3> moves{};
          moves[max_role_] = mx;
          moves[min_role_] = mn;
          moves[g_.random_index()] = mr;
          avg += pxw(g_.update(s0, moves, engine_), horizon - 1);
        }
        avg /= static_cast<long>(ev.legal[g_.random_index()].size());
        if (!worst || avg < *worst) worst = std::move(avg);
      }
      if (*worst == root) {
        out.best_first_move = g_.move_domain(max_role_)[mx];
        break;
      }
    }
    out.probability = root;
  } else {
    out.probability = pxw(s0, horizon);
  }
  out.nodes = nodes_;
  out.cache_hits = cache_hits_;
  return out;
}

EmmResult emm_solve(const GameSemantics& g, const Term& maximizer, int horizon,
                    EmmOptions opt) {
  return EmmSolver(g, maximizer, std::move(opt)).solve(horizon);
}

}  // namespace gdlsolve
