#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "gdlsolve/gdl.hpp"

namespace gdlsolve {

// Bijective interning of ground terms, valid for one grounding session.
class AtomTable {
 public:
  int intern(const Term& t);
  int find(const Term& t) const;  // -1 when absent
  const Term& term(int id) const { return terms_[id]; }
  int size() const { return static_cast<int>(terms_.size()); }

 private:
  std::unordered_map<Term, int, TermHash> ids_;
  std::vector<Term> terms_;
};

struct GroundRule {
  int head = -1;  // atom id; -1 for constraints
  std::vector<int> pos, neg;
};

struct GroundProgram {
  AtomTable atoms;
  std::vector<GroundRule> normal_rules;
  std::vector<GroundRule> choice_rules;
  std::vector<GroundRule> constraints;

  // stratum per atom (filled by compute_strata); negative edges only cross
  // strictly downward
  std::vector<int> strata;
  int num_strata = 0;

  void compute_strata();  // throws NotStratified
  std::string rule_str(const GroundRule& r, Rule::HeadKind kind) const;
  std::string dump() const;
};

// possible(src(args...)) additionally makes dst(args...) possible; used to
// open up `true` over base/1 and `does` over input/2
struct SeedRelation {
  std::string src_pred, dst_pred;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotStratified : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConstraintViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bottom-up instantiation over the possible-atom fixpoint. Choice-rule heads
// and seeded atoms are treated as possibly true; negative literals never
// block derivation. Certainly-false negative literals are dropped from
// emitted bodies; duplicate ground rules are emitted once.
GroundProgram ground(const GdlProgram& p, const std::vector<SeedRelation>& seeds = {});

// The unique stable model of a stratified program with the given choice/open
// atoms fixed to true. Throws ConstraintViolation / NotStratified.
std::vector<int> stable_model(GroundProgram& p, const std::vector<int>& inputs);

}  // namespace gdlsolve
