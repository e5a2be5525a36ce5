#pragma once

#include "gdlsolve/gdl.hpp"

namespace gdlsolve {

// Checks the GDL validity restrictions (keyword placement, role discipline,
// stratification, safety) and fills in p.roles. Throws ValidityError naming
// the violated restriction. The returned report lists roles and predicate
// strata. Only a program that passed validation may be fed downstream.
ValidationReport validate(GdlProgram& p);

// Predicate-level dependency edges (head predicate -> body predicate).
std::vector<PredEdge> predicate_edges(const GdlProgram& p);

}  // namespace gdlsolve
