#pragma once

#include "gdlsolve/ground.hpp"

namespace gdlsolve {

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // DIMACS-signed literals
};

// Atom a maps to variable a+1; aux variables (one per distinct nonempty rule
// body) follow. Aux variables belong to the innermost existential block only.
struct VarMap {
  int num_atoms = 0;
  int num_aux = 0;
  int atom_var(int atom) const { return atom + 1; }
  int num_vars() const { return num_atoms + num_aux; }
};

struct CycleError : std::runtime_error {
  std::vector<int> cycle;
  CycleError(std::string msg, std::vector<int> c)
      : std::runtime_error(std::move(msg)), cycle(std::move(c)) {}
};

// Verifies the positive atom dependency graph (heads of normal and choice
// rules to positive body atoms) is acyclic.
void check_tight(const GroundProgram& p);

// Clark completion of a tight program: models of the CNF, projected to the
// atom variables, are exactly the stable models.
std::pair<CnfFormula, VarMap> completion(const GroundProgram& p);

// "var <id> = <atom display>" lines for auditing emitted CNFs.
std::string varmap_sidecar(const GroundProgram& p, const VarMap& vm);

}  // namespace gdlsolve
