#pragma once

#include <string_view>

#include "gdlsolve/gdl.hpp"

namespace gdlsolve {

// Parses Prolog-style clauses: `head :- lit, not lit, ... .`, `% comment`.
// Also accepts `{head} :- body.` choice rules and headless `:- body.`
// constraints so that ground-program dumps round-trip. Performs no semantic
// validation beyond basic well-formedness.
GdlProgram parse_gdl(std::string_view text);

GdlProgram parse_gdl_file(const std::string& path);

}  // namespace gdlsolve
