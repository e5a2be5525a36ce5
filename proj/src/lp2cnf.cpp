#include "gdlsolve/lp2cnf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gdlsolve {

void check_tight(const GroundProgram& p) {
  int n = p.atoms.size();
  std::vector<std::vector<int>> adj(n);
  auto add = [&](const std::vector<GroundRule>& rules) {
    for (const GroundRule& r : rules)
      for (int b : r.pos) adj[r.head].push_back(b);
  };
  add(p.normal_rules);
  add(p.choice_rules);

  // colors: 0 unvisited, 1 on the current path, 2 done
  std::vector<char> color(n, 0);
  std::vector<int> path;
  struct Frame { int v; size_t edge; };
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<Frame> frames{{root, 0}};
    color[root] = 1;
    path.push_back(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (color[w] == 1) {
          auto it = std::find(path.begin(), path.end(), w);
          std::vector<int> cycle(it, path.end());
          std::string msg = "positive cycle:";
          for (int a : cycle) msg += " " + p.atoms.term(a).str();
          throw CycleError(msg, cycle);
        }
        if (color[w] == 0) {
          color[w] = 1;
          path.push_back(w);
          frames.push_back({w, 0});
        }
      } else {
        color[f.v] = 2;
        path.pop_back();
        frames.pop_back();
      }
    }
  }
}

std::pair<CnfFormula, VarMap> completion(const GroundProgram& p) {
  VarMap vm;
  vm.num_atoms = p.atoms.size();

  CnfFormula cnf;
  // syntactically identical bodies share one aux var
  std::map<std::pair<std::vector<int>, std::vector<int>>, int> body_var;
  int next_var = vm.num_atoms + 1;

  auto lit = [&vm](int atom, bool positive) {
    return positive ? vm.atom_var(atom) : -vm.atom_var(atom);
  };

  // returns 0 for the empty (true) body
  auto define_body = [&](const GroundRule& r) -> int {
    if (r.pos.empty() && r.neg.empty()) return 0;
    auto key = std::make_pair(r.pos, r.neg);
    auto it = body_var.find(key);
    if (it != body_var.end()) return it->second;
    int b = next_var++;
    body_var.emplace(std::move(key), b);
    std::vector<int> big{b};
    for (int a : r.pos) {
      cnf.clauses.push_back({-b, lit(a, true)});
      big.push_back(lit(a, false));
    }
    for (int a : r.neg) {
      cnf.clauses.push_back({-b, lit(a, false)});
      big.push_back(lit(a, true));
    }
    cnf.clauses.push_back(std::move(big));
    return b;
  };

  // support disjuncts per head atom; -1 marks unconditional support
  std::vector<std::vector<int>> support(p.atoms.size());
  for (const GroundRule& r : p.normal_rules) {
    int b = define_body(r);
    if (b == 0) {
      cnf.clauses.push_back({lit(r.head, true)});  // fact
      support[r.head].push_back(-1);
    } else {
      cnf.clauses.push_back({-b, lit(r.head, true)});
      support[r.head].push_back(b);
    }
  }
  for (const GroundRule& r : p.choice_rules) {
    int b = define_body(r);
    if (b == 0) support[r.head].push_back(-1);
    else support[r.head].push_back(b);
  }
  for (int a = 0; a < p.atoms.size(); ++a) {
    if (std::find(support[a].begin(), support[a].end(), -1) != support[a].end())
      continue;
    std::vector<int> clause{lit(a, false)};
    for (int b : support[a]) clause.push_back(b);
    cnf.clauses.push_back(std::move(clause));
  }
  for (const GroundRule& r : p.constraints) {
    int b = define_body(r);
    if (b == 0) cnf.clauses.push_back({});  // trivially inconsistent
    else cnf.clauses.push_back({-b});
  }

  vm.num_aux = next_var - 1 - vm.num_atoms;
  cnf.num_vars = vm.num_vars();
  return {std::move(cnf), vm};
}

std::string varmap_sidecar(const GroundProgram& p, const VarMap& vm) {
  std::ostringstream os;
  for (int a = 0; a < p.atoms.size(); ++a)
    os << "var " << vm.atom_var(a) << " = " << p.atoms.term(a).str() << '\n';
  return os.str();
}

}  // namespace gdlsolve
