#include "gdlsolve/pipeline.hpp"

namespace gdlsolve {

XssatFormula to_xssat(const SqaspProgram& sp) {
  check_tight(sp.program);
  auto [cnf, vm] = completion(sp.program);

  XssatFormula f;
  f.clauses = std::move(cnf);
  std::vector<char> seen(vm.num_atoms, 0);
  for (const auto& block : sp.blocks) {
    for (const QuantifiedAtom& qa : block) {
      if (seen[qa.atom]) throw PrefixError("atom quantified twice");
      seen[qa.atom] = 1;
      f.prefix.push_back({vm.atom_var(qa.atom), qa.kind, qa.p});
    }
  }
  for (int a = 0; a < vm.num_atoms; ++a)
    if (!seen[a]) throw PrefixError("atom missing from quantifier blocks");
  for (int i = 0; i < vm.num_aux; ++i)
    f.prefix.push_back({vm.num_atoms + i + 1, QuantKind::Exists, {}});
  return f;
}

Rational solve_via_xssat(const SqaspProgram& sp, const XssatEvalOptions& opt,
                         PipelineStats* stats) {
  XssatFormula f = to_xssat(sp);
  if (stats) {
    stats->num_atoms = static_cast<int>(sp.program.atoms.size());
    stats->num_aux = f.clauses.num_vars - stats->num_atoms;
    stats->num_clauses = static_cast<int>(f.clauses.clauses.size());
  }
  return evaluate(f, opt, stats ? &stats->eval : nullptr);
}

}  // namespace gdlsolve
