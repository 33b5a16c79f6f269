#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgap {

// Base class for every library error.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix/tensor dimensions do not match the operation's contract.
struct shape_error : error {
  explicit shape_error(const std::string& msg) : error(msg) {}
};

// Operands belong to different fields (or incompatible extensions).
struct field_mismatch_error : error {
  explicit field_mismatch_error(const std::string& msg) : error(msg) {}
};

// Attempt to invert a singular matrix or a zero element.
struct singular_error : error {
  explicit singular_error(const std::string& msg) : error(msg) {}
};

// Degenerate inputs: zero tensor, empty matrix space, value outside domain.
struct degenerate_input_error : error {
  explicit degenerate_input_error(const std::string& msg) : error(msg) {}
};

// Randomized genericity retries exhausted.
struct genericity_error : error {
  explicit genericity_error(const std::string& msg) : error(msg) {}
};

// The field is too small for the requested semantics and lifting is disabled.
struct small_field_error : error {
  explicit small_field_error(const std::string& msg) : error(msg) {}
};

// A verified internal cross-check contradicted the decision procedure.
struct internal_error : error {
  explicit internal_error(const std::string& msg) : error(msg) {}
};

// Root bracketing for constant computation failed its runtime sign checks.
struct bracketing_error : error {
  explicit bracketing_error(const std::string& msg) : error(msg) {}
};

// Input document could not be parsed; carries a position when known.
struct parse_error : error {
  std::size_t line = 0;
  std::size_t column = 0;
  parse_error(const std::string& msg, std::size_t line_, std::size_t column_)
      : error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
  explicit parse_error(const std::string& msg) : error(msg) {}
};

}  // namespace sgap
