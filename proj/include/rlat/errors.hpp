#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlat {

enum class Errc {
  unknown_attribute,
  duplicate_attribute,
  tuple_header_mismatch,
  value_outside_domain,
  universe_mismatch,
  header_mismatch,
  attribute_not_in_header,
  target_attribute_collision,
  domain_mismatch,
  header_not_proper_subset,
  empty_divisor_header,
  unary_relation_required,
  overlapping_headers,
  arity_mismatch,
  unresolved_name,
  syntax_error,
  rule_not_applicable,
  universe_too_large,
  bad_document,
};

const char* errc_name(Errc code);

/// Position of a token in expression text. line == 0 means "no location".
struct SourceLoc {
  std::size_t offset = 0;
  std::size_t line = 0;
  std::size_t column = 0;
  bool valid() const { return line != 0; }
};

class LatticeError : public std::runtime_error {
 public:
  LatticeError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  LatticeError(Errc code, const std::string& message, SourceLoc loc)
      : std::runtime_error(message), code_(code), loc_(loc) {}

  Errc code() const { return code_; }
  const SourceLoc& loc() const { return loc_; }
  void set_loc(const SourceLoc& loc) { loc_ = loc; }

 private:
  Errc code_;
  SourceLoc loc_{};
};

class SyntaxError : public LatticeError {
 public:
  SyntaxError(const std::string& message, SourceLoc loc, std::string expected)
      : LatticeError(Errc::syntax_error, message, loc),
        expected_(std::move(expected)) {}

  /// Comma-joined list of token kinds that would have been accepted.
  const std::string& expected() const { return expected_; }

 private:
  std::string expected_;
};

}  // namespace rlat
