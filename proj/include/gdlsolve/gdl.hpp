#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdlsolve/term.hpp"

namespace gdlsolve {

struct Literal {
  Term atom;
  bool positive = true;

  std::string str() const { return positive ? atom.str() : "not " + atom.str(); }
  bool operator==(const Literal& o) const {
    return positive == o.positive && atom == o.atom;
  }
};

// head_kind None => integrity constraint, Choice => "{head}" choice rule.
struct Rule {
  enum class HeadKind : uint8_t { Atom, Choice, None };

  HeadKind head_kind = HeadKind::Atom;
  Term head;  // meaningless when head_kind == None
  std::vector<Literal> body;

  bool is_fact() const { return head_kind == HeadKind::Atom && body.empty(); }
  std::string str() const;
  bool operator==(const Rule& o) const {
    return head_kind == o.head_kind && body == o.body &&
           (head_kind == HeadKind::None || head == o.head);
  }
};

// Edge in the predicate dependency graph; negative means the dependency
// crosses a "not".
struct PredEdge {
  std::string from, to;
  bool negative = false;
};

struct GdlProgram {
  std::vector<Rule> rules;
  std::vector<Term> roles;  // filled by validate()

  std::string str() const;
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l), column(c) {}
};

struct ValidityError : std::runtime_error {
  explicit ValidityError(const std::string& msg)
      : std::runtime_error("invalid GDL: " + msg) {}
};

struct ValidationReport {
  std::vector<Term> roles;
  // predicate -> stratum (0 = lowest); predicates not reached by any rule head
  // are absent
  std::map<std::string, int> strata;
  std::string str() const;
};

}  // namespace gdlsolve
