#pragma once

#include <array>
#include <memory>
#include <optional>

#include "gdlsolve/ground.hpp"

namespace gdlsolve {

// A game state: sorted indices into base() (the base propositions).
using State = std::vector<int>;

// The transition-system reading of a validated GDL description. Immutable
// after build(); evaluations take an Engine scratch object so concurrent
// callers each bring their own.
class GameSemantics {
 public:
  struct Engine {
    std::vector<char> truth;
    uint64_t evals = 0;
  };

  struct StaticEval {
    bool terminal = false;
    std::array<std::vector<int>, 3> legal;  // move indices per role, ascending
    std::array<std::optional<long long>, 3> goal;  // goal value per role
  };

  static GameSemantics build(const GdlProgram& validated);

  // role order: the two adversarial roles in source order, then random
  const std::array<Term, 3>& roles() const { return roles_; }
  int role_index(const Term& r) const;
  int random_index() const { return 2; }

  const std::vector<Term>& base() const { return base_; }
  const State& init() const { return init_; }
  const std::vector<Term>& move_domain(int role) const { return domains_[role]; }

  StaticEval eval(const State& s, Engine& e) const;
  // moves: index into each role's move domain
  State update(const State& s, const std::array<int, 3>& moves, Engine& e) const;

  // one-shot convenience accessors
  std::vector<Term> legal(const Term& role, const State& s) const;
  bool terminal(const State& s) const;
  std::optional<long long> goal_value(const Term& role, const State& s) const;
  State update(const State& s, const std::array<Term, 3>& joint) const;

  std::string state_str(const State& s) const;

 private:
  void run_fixpoint(Engine& e) const;

  std::array<Term, 3> roles_;
  std::vector<Term> base_;
  State init_;
  std::array<std::vector<Term>, 3> domains_;

  // compiled ground rules, sorted by stratum
  struct CompiledRule {
    int head;
    std::vector<int> pos, neg;
  };
  std::vector<CompiledRule> rules_;
  std::vector<int> stratum_end_;  // rule index past the end of each stratum
  int num_atoms_ = 0;

  std::vector<int> true_atom_;                     // per base index, -1 if absent
  std::vector<int> next_atom_;                     // per base index, -1 if absent
  std::array<std::vector<int>, 3> does_atom_;      // [role][move]
  std::array<std::vector<int>, 3> legal_atom_;     // [role][move], -1 if absent
  std::array<std::vector<std::pair<int, long long>>, 3> goal_atoms_;  // [role] -> (atom, value)
  int terminal_atom_ = -1;
};

struct NoLegalMove : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TurnTakingViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gdlsolve
