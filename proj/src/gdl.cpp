#include "gdlsolve/gdl.hpp"

#include <sstream>

namespace gdlsolve {

std::string Rule::str() const {
  std::ostringstream os;
  switch (head_kind) {
    case HeadKind::Atom: os << head.str(); break;
    case HeadKind::Choice: os << '{' << head.str() << '}'; break;
    case HeadKind::None: break;
  }
  if (!body.empty()) {
    if (head_kind != HeadKind::None) os << ' ';
    os << ":- ";
    for (size_t i = 0; i < body.size(); ++i) {
      if (i) os << ", ";
      os << body[i].str();
    }
  }
  os << '.';
  return os.str();
}

std::string GdlProgram::str() const {
  std::ostringstream os;
  for (const Rule& r : rules) os << r.str() << '\n';
  return os.str();
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  os << "roles:";
  for (const Term& r : roles) os << ' ' << r.str();
  os << "\nstrata:\n";
  for (const auto& [pred, s] : strata) os << "  " << pred << ": " << s << '\n';
  return os.str();
}

}  // namespace gdlsolve
