#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gdlsolve {

// Prolog-style term. Constants and functors start lowercase, variables
// uppercase. Integers are plain constants with no arithmetic attached.
struct Term {
  enum class Kind : uint8_t { Constant, Variable, Integer, Compound };

  Kind kind = Kind::Constant;
  std::string name;        // constant / variable / functor name
  long long value = 0;     // Kind::Integer only
  std::vector<Term> args;  // Kind::Compound only

  static Term constant(std::string n);
  static Term variable(std::string n);
  static Term integer(long long v);
  static Term compound(std::string functor, std::vector<Term> as);

  bool is_ground() const;
  // Predicate/functor symbol: name for Constant/Compound, the decimal
  // rendering for Integer. Variables have no functor.
  std::string functor() const;
  size_t arity() const { return kind == Kind::Compound ? args.size() : 0; }

  std::string str() const;

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }
  bool operator<(const Term& o) const;  // orders by display string
};

size_t hash_value(const Term& t);

struct TermHash {
  size_t operator()(const Term& t) const { return hash_value(t); }
};

}  // namespace gdlsolve
