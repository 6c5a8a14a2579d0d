#pragma once

#include <string>

#include "valx/error.hpp"

// Asserts that expr throws valx::Error of the given kind.
#define CHECK_KIND(expr, want_kind)                                 \
  do {                                                              \
    std::string got_ = "no error";                                  \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const ::valx::Error& e_) {                             \
      got_ = std::string(::valx::to_string(e_.kind()));             \
    }                                                               \
    CHECK(got_ == std::string(::valx::to_string(want_kind)));       \
  } while (0)
