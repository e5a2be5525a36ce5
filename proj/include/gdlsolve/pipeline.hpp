#pragma once

#include "gdlsolve/encoder.hpp"
#include "gdlsolve/lp2cnf.hpp"
#include "gdlsolve/xssat.hpp"

namespace gdlsolve {

// Completion of the SQASP program with atoms ordered by their quantifier
// blocks and aux variables appended to the innermost existential block.
XssatFormula to_xssat(const SqaspProgram& sp);

struct PipelineStats {
  int num_atoms = 0;
  int num_aux = 0;
  int num_clauses = 0;
  XssatStats eval;
};

Rational solve_via_xssat(const SqaspProgram& sp, const XssatEvalOptions& opt = {},
                         PipelineStats* stats = nullptr);

}  // namespace gdlsolve
