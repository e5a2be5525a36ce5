#pragma once

#include <stdexcept>

namespace gdlsolve {

struct TimeoutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gdlsolve
