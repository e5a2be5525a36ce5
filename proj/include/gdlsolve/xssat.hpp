#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdlsolve/lp2cnf.hpp"
#include "gdlsolve/quant.hpp"
#include "gdlsolve/rational.hpp"
#include "gdlsolve/timeout.hpp"

namespace gdlsolve {

struct XssatQuant {
  int var;  // 1-based
  QuantKind kind = QuantKind::Exists;
  Rational p;  // Chance only
};

struct XssatFormula {
  std::vector<XssatQuant> prefix;  // outermost first
  CnfFormula clauses;
};

struct PrefixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  int line;
  FormatError(int l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};

struct XssatEvalOptions {
  bool use_cache = true;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct XssatStats {
  uint64_t nodes = 0;
  uint64_t cache_hits = 0;
};

// Exact maximal satisfaction probability: max over ∃ branches, min over ∀,
// weighted sum over chance variables, with quantifier-aware unit propagation,
// 1/0 short circuits, and residual-formula caching. All arithmetic is exact.
Rational evaluate(const XssatFormula& f, const XssatEvalOptions& opt = {},
                  XssatStats* stats = nullptr);

// Prefix-annotated DIMACS: "p xssat <vars> <clauses>", one `e|a|r` line per
// prefix variable, then 0-terminated clauses.
XssatFormula read_xssat(std::string_view text);
std::string write_xssat(const XssatFormula& f);

}  // namespace gdlsolve
