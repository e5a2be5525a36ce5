#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gdlsolve/rational.hpp"

namespace gdlsolve {

// "first"/"second" name which mover maximizes; single-player-vs-random games
// ship one file per variant because the chance role takes over the other
// side's marks.
struct CorpusVariant {
  std::string name;
  std::string gdl_path;
  std::optional<std::string> expected_pct;  // 2-decimal percentage
};

struct CorpusEntry {
  std::string game_id;
  int horizon = 0;
  std::optional<Rational> chance_param;
  std::vector<CorpusVariant> variants;
};

// Reads <dir>/manifest: one variant per line as space-separated key=value
// pairs (game, variant, gdl, horizon; optional p, expected). Lines starting
// with '#' are comments. Consecutive lines with the same game id form one
// entry. Paths are resolved relative to <dir>.
std::vector<CorpusEntry> corpus(const std::string& dir);

// The shipped sn<pile>.gdl files are exactly this text.
std::string stochastic_nim_gdl(int pile);

}  // namespace gdlsolve
