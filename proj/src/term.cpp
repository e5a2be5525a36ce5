#include "gdlsolve/term.hpp"

#include <functional>
#include <sstream>

namespace gdlsolve {

Term Term::constant(std::string n) {
  Term t;
  t.kind = Kind::Constant;
  t.name = std::move(n);
  return t;
}

Term Term::variable(std::string n) {
  Term t;
  t.kind = Kind::Variable;
  t.name = std::move(n);
  return t;
}

Term Term::integer(long long v) {
  Term t;
  t.kind = Kind::Integer;
  t.value = v;
  return t;
}

Term Term::compound(std::string functor, std::vector<Term> as) {
  Term t;
  t.kind = Kind::Compound;
  t.name = std::move(functor);
  t.args = std::move(as);
  return t;
}

bool Term::is_ground() const {
  switch (kind) {
    case Kind::Variable: return false;
    case Kind::Compound:
      for (const Term& a : args)
        if (!a.is_ground()) return false;
      return true;
    default: return true;
  }
}

std::string Term::functor() const {
  if (kind == Kind::Integer) return std::to_string(value);
  return name;
}

std::string Term::str() const {
  switch (kind) {
    case Kind::Constant:
    case Kind::Variable: return name;
    case Kind::Integer: return std::to_string(value);
    case Kind::Compound: {
      std::ostringstream os;
      os << name << '(';
      for (size_t i = 0; i < args.size(); ++i) {
        if (i) os << ',';
        os << args[i].str();
      }
      os << ')';
      return os.str();
    }
  }
  return {};
}

bool Term::operator==(const Term& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Integer: return value == o.value;
    case Kind::Compound: return name == o.name && args == o.args;
    default: return name == o.name;
  }
}

bool Term::operator<(const Term& o) const { return str() < o.str(); }

size_t hash_value(const Term& t) {
  size_t h = std::hash<int>()(static_cast<int>(t.kind));
  auto mix = [&h](size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  if (t.kind == Term::Kind::Integer) {
    mix(std::hash<long long>()(t.value));
  } else {
    mix(std::hash<std::string>()(t.name));
    for (const Term& a : t.args) mix(hash_value(a));
  }
  return h;
}

}  // namespace gdlsolve
