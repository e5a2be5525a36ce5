#pragma once

#include <cstdint>

namespace gdlsolve {

enum class QuantKind : uint8_t { Exists, Forall, Chance };

}  // namespace gdlsolve
