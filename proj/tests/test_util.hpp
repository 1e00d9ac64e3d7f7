#pragma once

#include "chainlets/scalar.hpp"

namespace chainlets {

// Scoped arithmetic-mode switch for tests.
struct ModeGuard {
  ArithmeticMode saved;
  explicit ModeGuard(ArithmeticMode mode) : saved(arithmetic_mode()) {
    set_arithmetic_mode(mode);
  }
  ~ModeGuard() { set_arithmetic_mode(saved); }
};

}  // namespace chainlets
