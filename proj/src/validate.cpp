#include "gdlsolve/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gdlsolve {
namespace {

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Variable) out.insert(t.name);
  for (const Term& a : t.args) collect_vars(a, out);
}

// predicates reachable from `from` in the dependency graph (any polarity)
std::set<std::string> reachable(const std::multimap<std::string, std::pair<std::string, bool>>& g,
                                const std::string& from) {
  std::set<std::string> seen;
  std::vector<std::string> work{from};
  while (!work.empty()) {
    std::string p = work.back();
    work.pop_back();
    auto [lo, hi] = g.equal_range(p);
    for (auto it = lo; it != hi; ++it)
      if (seen.insert(it->second.first).second) work.push_back(it->second.first);
  }
  return seen;
}

}  // namespace

std::vector<PredEdge> predicate_edges(const GdlProgram& p) {
  std::vector<PredEdge> edges;
  std::set<std::tuple<std::string, std::string, bool>> seen;
  for (const Rule& r : p.rules) {
    if (r.head_kind == Rule::HeadKind::None) continue;
    std::string h = r.head.functor();
    for (const Literal& l : r.body) {
      auto key = std::make_tuple(h, l.atom.functor(), !l.positive);
      if (seen.insert(key).second)
        edges.push_back({h, l.atom.functor(), !l.positive});
    }
  }
  return edges;
}

ValidationReport validate(GdlProgram& p) {
  std::vector<Term> roles;  // source order
  auto add_role = [&roles](const Term& t) {
    if (std::find(roles.begin(), roles.end(), t) == roles.end())
      roles.push_back(t);
  };
  for (const Rule& r : p.rules) {
    if (r.head_kind == Rule::HeadKind::Choice)
      throw ValidityError("choice rules are not allowed in game descriptions");
    if (r.head_kind == Rule::HeadKind::None)
      throw ValidityError("integrity constraints are not allowed in game descriptions");

    std::string h = r.head.functor();
    if (h == "role") {
      if (!r.body.empty()) throw ValidityError("role only in facts");
      if (r.head.arity() != 1 || !r.head.is_ground())
        throw ValidityError("role facts must be ground and unary");
      add_role(r.head.args[0]);
    }
    if (h == "true" || h == "does")
      throw ValidityError(h + " only in bodies");
    for (const Literal& l : r.body) {
      std::string b = l.atom.functor();
      if (b == "init" || b == "next") throw ValidityError(b + " only in heads");
      if (b == "role") throw ValidityError("role only in facts");
    }

    // safety
    std::set<std::string> pos_vars;
    for (const Literal& l : r.body)
      if (l.positive) collect_vars(l.atom, pos_vars);
    std::set<std::string> need;
    collect_vars(r.head, need);
    for (const Literal& l : r.body)
      if (!l.positive) collect_vars(l.atom, need);
    for (const std::string& v : need)
      if (!pos_vars.count(v))
        throw ValidityError("unsafe rule, variable " + v +
                            " not bound by a positive body literal: " + r.str());
  }

  if (roles.size() != 3)
    throw ValidityError("expected exactly 3 roles, found " +
                        std::to_string(roles.size()));
  if (std::find(roles.begin(), roles.end(), Term::constant("random")) == roles.end())
    throw ValidityError("missing the random role");

  std::multimap<std::string, std::pair<std::string, bool>> graph;
  for (const PredEdge& e : predicate_edges(p))
    graph.emplace(e.from, std::make_pair(e.to, e.negative));

  for (const char* g : {"legal", "terminal", "goal"}) {
    std::set<std::string> r = reachable(graph, g);
    if (r.count("does"))
      throw ValidityError(std::string(g) + " must not depend on does");
  }
  {
    std::set<std::string> r = reachable(graph, "init");
    if (r.count("true") || r.count("does"))
      throw ValidityError("init must not depend on true or does");
  }

  // stratification via Tarjan SCC over the predicate graph
  std::set<std::string> preds;
  for (const auto& [from, to] : graph) {
    preds.insert(from);
    preds.insert(to.first);
  }
  for (const Rule& r : p.rules) preds.insert(r.head.functor());

  std::map<std::string, int> index, low, comp;
  std::vector<std::string> stack;
  std::set<std::string> on_stack;
  int next_index = 0, next_comp = 0;
  std::function<void(const std::string&)> strongconnect = [&](const std::string& v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack.insert(v);
    auto [lo, hi] = graph.equal_range(v);
    for (auto it = lo; it != hi; ++it) {
      const std::string& w = it->second.first;
      if (!index.count(w)) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        comp[w] = next_comp;
        if (w == v) break;
      }
      ++next_comp;
    }
  };
  for (const std::string& v : preds)
    if (!index.count(v)) strongconnect(v);

  for (const auto& [from, to] : graph)
    if (to.second && comp[from] == comp[to.first])
      throw ValidityError("not stratified: negative cycle through " + from);

  // strata: longest path in the SCC condensation counting negative edges
  std::multimap<int, std::pair<int, bool>> cgraph;
  for (const auto& [from, to] : graph)
    if (comp[from] != comp[to.first])
      cgraph.emplace(comp[from], std::make_pair(comp[to.first], to.second));
  std::map<int, int> comp_stratum;
  std::function<int(int)> cstratum = [&](int c) -> int {
    auto it = comp_stratum.find(c);
    if (it != comp_stratum.end()) return it->second;
    int s = 0;
    auto [lo, hi] = cgraph.equal_range(c);
    for (auto it2 = lo; it2 != hi; ++it2)
      s = std::max(s, cstratum(it2->second.first) + (it2->second.second ? 1 : 0));
    comp_stratum[c] = s;
    return s;
  };
  std::map<std::string, int> strata;
  for (const std::string& v : preds) strata[v] = cstratum(comp[v]);

  p.roles = roles;
  ValidationReport rep;
  rep.roles = p.roles;
  rep.strata = std::move(strata);
  return rep;
}

}  // namespace gdlsolve
