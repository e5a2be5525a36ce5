#include "gdlsolve/xssat.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace gdlsolve {
namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct KeyHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
    return k.first ^ (k.second * 0x9e3779b97f4a7c15ULL);
  }
};

class Evaluator {
 public:
  Evaluator(const XssatFormula& f, const XssatEvalOptions& opt, XssatStats* stats)
      : opt_(opt), stats_(stats) {
    int nvars = 0;
    for (const XssatQuant& q : f.prefix) nvars = std::max(nvars, q.var);
    for (const auto& cl : f.clauses.clauses)
      for (int l : cl) nvars = std::max(nvars, std::abs(l));

    kind_.assign(nvars + 1, QuantKind::Exists);
    prob_.assign(nvars + 1, Rational(0));
    in_prefix_.assign(nvars + 1, 0);
    val_.assign(nvars + 1, 0);
    occ_pos_.resize(nvars + 1);
    occ_neg_.resize(nvars + 1);

    for (const XssatQuant& q : f.prefix) {
      if (q.var <= 0) throw PrefixError("non-positive prefix variable");
      if (in_prefix_[q.var]) throw PrefixError("variable quantified twice");
      in_prefix_[q.var] = 1;
      kind_[q.var] = q.kind;
      if (q.kind == QuantKind::Chance) prob_[q.var] = q.p;
      order_.push_back(q.var);
    }

    for (const auto& cl : f.clauses.clauses) {
      std::vector<int> lits = cl;
      std::sort(lits.begin(), lits.end(),
                [](int a, int b) { return std::abs(a) != std::abs(b)
                                       ? std::abs(a) < std::abs(b) : a < b; });
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      bool taut = false;
      for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i] == -lits[i + 1]) taut = true;
      if (taut) continue;
      for (int l : lits)
        if (!in_prefix_[std::abs(l)])
          throw PrefixError("clause variable " + std::to_string(std::abs(l)) +
                            " missing from the prefix");
      Clause c;
      c.lits = std::move(lits);
      c.n_unassigned = static_cast<int>(c.lits.size());
      int id = static_cast<int>(clauses_.size());
      c.base1 = splitmix64(id * 2 + 1);
      c.base2 = splitmix64(id * 2 + 0x8000000000000000ULL);
      c.cur1 = c.base1;
      c.cur2 = c.base2;
      for (size_t i = 0; i < c.lits.size(); ++i) {
        int l = c.lits[i];
        (l > 0 ? occ_pos_ : occ_neg_)[std::abs(l)].push_back({id, static_cast<int>(i)});
      }
      clauses_.push_back(std::move(c));
    }

    active_ = static_cast<int>(clauses_.size());
    h1_ = h2_ = 0;
    for (size_t i = 0; i < clauses_.size(); ++i) {
      const Clause& c = clauses_[i];
      h1_ += c.cur1;
      h2_ += c.cur2;
      if (c.n_unassigned == 0) ++conflicts_;  // empty clause
      else if (c.n_unassigned == 1) units_.push_back(static_cast<int>(i));
    }
  }

  Rational run() { return eval(0); }

 private:
  struct Occ { int clause; int lit_idx; };
  struct Clause {
    std::vector<int> lits;
    int n_true = 0;
    int n_unassigned = 0;
    uint64_t base1, base2;  // contribution with no falsified literals
    uint64_t cur1, cur2;    // current contribution while active
  };

  uint64_t fal_key1(int c, int idx) const { return splitmix64((uint64_t)c * 1000003 + idx + 17); }
  uint64_t fal_key2(int c, int idx) const { return splitmix64((uint64_t)c * 999983 + idx + 0x5bd1e995); }

  void assign(int var, int sign) {
    val_[var] = static_cast<int8_t>(sign);
    trail_.push_back(var);
    for (const Occ& o : (sign > 0 ? occ_pos_ : occ_neg_)[var]) {
      Clause& c = clauses_[o.clause];
      --c.n_unassigned;
      if (c.n_true++ == 0) {  // became satisfied
        h1_ -= c.cur1;
        h2_ -= c.cur2;
        --active_;
      }
    }
    for (const Occ& o : (sign > 0 ? occ_neg_ : occ_pos_)[var]) {
      Clause& c = clauses_[o.clause];
      --c.n_unassigned;
      uint64_t k1 = fal_key1(o.clause, o.lit_idx), k2 = fal_key2(o.clause, o.lit_idx);
      c.cur1 += k1;
      c.cur2 += k2;
      if (c.n_true == 0) {
        h1_ += k1;
        h2_ += k2;
        if (c.n_unassigned == 1) units_.push_back(o.clause);
        else if (c.n_unassigned == 0) ++conflicts_;
      }
    }
  }

  void unassign(int var) {
    int sign = val_[var];
    val_[var] = 0;
    for (const Occ& o : (sign > 0 ? occ_pos_ : occ_neg_)[var]) {
      Clause& c = clauses_[o.clause];
      ++c.n_unassigned;
      if (--c.n_true == 0) {
        h1_ += c.cur1;
        h2_ += c.cur2;
        ++active_;
      }
    }
    for (const Occ& o : (sign > 0 ? occ_neg_ : occ_pos_)[var]) {
      Clause& c = clauses_[o.clause];
      ++c.n_unassigned;
      uint64_t k1 = fal_key1(o.clause, o.lit_idx), k2 = fal_key2(o.clause, o.lit_idx);
      c.cur1 -= k1;
      c.cur2 -= k2;
      if (c.n_true == 0) {
        h1_ -= k1;
        h2_ -= k2;
        if (c.n_unassigned == 1) --conflicts_;  // was a conflict before undo
      }
    }
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      int v = trail_.back();
      trail_.pop_back();
      unassign(v);
    }
  }

  bool occurs_active(int var) const {
    for (const Occ& o : occ_pos_[var])
      if (clauses_[o.clause].n_true == 0) return true;
    for (const Occ& o : occ_neg_[var])
      if (clauses_[o.clause].n_true == 0) return true;
    return false;
  }

  Rational eval(size_t from) {
    if (stats_) ++stats_->nodes;
    if ((++ticks_ & 0xfff) == 0 && opt_.deadline &&
        std::chrono::steady_clock::now() > *opt_.deadline)
      throw TimeoutError("deadline exceeded in xssat evaluation");

    size_t mark = trail_.size();
    Rational w = 1;
    bool zero = conflicts_ > 0;

    while (!zero && !units_.empty()) {
      int ci = units_.back();
      units_.pop_back();
      Clause& c = clauses_[ci];
      if (c.n_true > 0 || c.n_unassigned != 1) continue;
      int lit = 0;
      for (int l : c.lits)
        if (val_[std::abs(l)] == 0) { lit = l; break; }
      int v = std::abs(lit), s = lit > 0 ? 1 : -1;
      switch (kind_[v]) {
        case QuantKind::Forall:
          zero = true;  // the branch violating the unit clause forces min = 0
          break;
        case QuantKind::Chance: {
          const Rational& p = prob_[v];
          if (s > 0) w *= p;
          else w *= Rational(1) - p;
          if (w == 0) { zero = true; break; }
          assign(v, s);
          break;
        }
        case QuantKind::Exists:
          assign(v, s);
          break;
      }
      if (conflicts_ > 0) zero = true;
    }
    units_.clear();

    Rational result;
    if (zero) {
      result = 0;
    } else if (active_ == 0) {
      result = w;
    } else {
      size_t i = from;
      while (i < order_.size() &&
             (val_[order_[i]] != 0 || !occurs_active(order_[i])))
        ++i;
      // an active clause always has an unassigned prefix variable
      if (i == order_.size()) throw PrefixError("active clause outside prefix");
      int v = order_[i];

      std::pair<uint64_t, uint64_t> key{h1_, h2_};
      Rational inner;
      bool hit = false;
      if (opt_.use_cache) {
        auto it = cache_.find(key);
        if (it != cache_.end()) {
          inner = it->second;
          hit = true;
          if (stats_) ++stats_->cache_hits;
        }
      }
      if (!hit) {
        switch (kind_[v]) {
          case QuantKind::Exists: {
            Rational t = branch2(v, 1, i + 1);
            if (t == 1) inner = std::move(t);
            else {
              Rational f = branch2(v, -1, i + 1);
              inner = std::max(t, f);
            }
            break;
          }
          case QuantKind::Forall: {
            Rational f = branch2(v, -1, i + 1);
            if (f == 0) inner = std::move(f);
            else {
              Rational t = branch2(v, 1, i + 1);
              inner = std::min(t, f);
            }
            break;
          }
          case QuantKind::Chance: {
            const Rational& p = prob_[v];
            if (p == 1) inner = branch2(v, 1, i + 1);
            else if (p == 0) inner = branch2(v, -1, i + 1);
            else {
              Rational t = branch2(v, 1, i + 1);
              Rational f = branch2(v, -1, i + 1);
              inner = p * t + (Rational(1) - p) * f;
            }
            break;
          }
        }
        if (opt_.use_cache) cache_.emplace(key, inner);
      }
      result = w * inner;
    }

    undo_to(mark);
    units_.clear();
    return result;
  }

  Rational branch2(int v, int sign, size_t from) {
    size_t mark = trail_.size();
    assign(v, sign);
    Rational r = eval(from);
    undo_to(mark);
    units_.clear();
    return r;
  }

  XssatEvalOptions opt_;
  XssatStats* stats_;

  std::vector<QuantKind> kind_;
  std::vector<Rational> prob_;
  std::vector<char> in_prefix_;
  std::vector<int8_t> val_;
  std::vector<int> order_;
  std::vector<std::vector<Occ>> occ_pos_, occ_neg_;
  std::vector<Clause> clauses_;
  std::vector<int> units_;
  std::vector<int> trail_;
  int active_ = 0, conflicts_ = 0;
  uint64_t h1_ = 0, h2_ = 0, ticks_ = 0;
  std::unordered_map<std::pair<uint64_t, uint64_t>, Rational, KeyHash> cache_;
};

}  // namespace

Rational evaluate(const XssatFormula& f, const XssatEvalOptions& opt, XssatStats* stats) {
  return Evaluator(f, opt, stats).run();
}

XssatFormula read_xssat(std::string_view text) {
  XssatFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int declared_vars = 0, declared_clauses = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "xssat")
        throw FormatError(lineno, "bad header, expected 'p xssat <vars> <clauses>'");
      have_header = true;
      continue;
    }
    if (!have_header) throw FormatError(lineno, "missing 'p xssat' header");
    if (tok == "e" || tok == "a") {
      int v, z;
      if (!(ls >> v >> z) || z != 0 || v <= 0)
        throw FormatError(lineno, "bad quantifier line");
      f.prefix.push_back({v, tok == "e" ? QuantKind::Exists : QuantKind::Forall, {}});
      continue;
    }
    if (tok == "r") {
      std::string frac;
      int v, z;
      if (!(ls >> frac >> v >> z) || z != 0 || v <= 0)
        throw FormatError(lineno, "bad chance quantifier line");
      try {
        Rational p(frac);
        p.canonicalize();
        if (p < 0 || p > 1) throw std::invalid_argument("range");
        f.prefix.push_back({v, QuantKind::Chance, p});
      } catch (const std::exception&) {
        throw FormatError(lineno, "bad probability '" + frac + "'");
      }
      continue;
    }
    // clause line
    std::vector<int> lits;
    try {
      int l = std::stoi(tok);
      while (l != 0) {
        lits.push_back(l);
        if (!(ls >> l)) throw FormatError(lineno, "clause not 0-terminated");
      }
    } catch (const std::invalid_argument&) {
      throw FormatError(lineno, "unrecognized line");
    }
    f.clauses.clauses.push_back(std::move(lits));
  }
  f.clauses.num_vars = declared_vars;
  if (declared_clauses != static_cast<int>(f.clauses.clauses.size()))
    throw FormatError(lineno, "clause count mismatch");
  return f;
}

std::string write_xssat(const XssatFormula& f) {
  std::ostringstream os;
  os << "p xssat " << f.clauses.num_vars << ' ' << f.clauses.clauses.size() << '\n';
  for (const XssatQuant& q : f.prefix) {
    switch (q.kind) {
      case QuantKind::Exists: os << "e " << q.var << " 0\n"; break;
      case QuantKind::Forall: os << "a " << q.var << " 0\n"; break;
      case QuantKind::Chance:
        os << "r " << rational_string(q.p) << ' ' << q.var << " 0\n";
        break;
    }
  }
  for (const auto& cl : f.clauses.clauses) {
    for (int l : cl) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace gdlsolve
