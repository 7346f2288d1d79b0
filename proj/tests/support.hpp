#pragma once

#include <optional>

#include "pancha/error.hpp"

template <class F>
std::optional<pancha::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const pancha::Error& e) {
    return e.code();
  }
  return std::nullopt;
}
