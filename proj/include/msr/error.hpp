#pragma once

#include <stdexcept>
#include <string>

namespace msr {

// Error codes; msrcode.h mirrors this numbering for the C API.
enum class Errc : int {
  ok = 0,
  bad_argument = 1,
  inadmissible = 2,
  zero_inverse = 3,
  singular = 4,
  inconsistent = 5,
  dimension_mismatch = 6,
  length_mismatch = 7,
  construction_failed = 8,
  parse_error = 9,
  version_mismatch = 10,
  rank_deficient = 11,
  wrong_helper_shape = 12,
  singular_basis = 13,
  field_too_small = 14,
  already_failed = 15,
  double_failure = 16,
  no_failure = 17,
  bad_subset = 18,
  unknown_node = 19,
  overflow = 20,
  io_error = 21,
  internal = 22,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ok: return "Ok";
    case Errc::bad_argument: return "BadArgument";
    case Errc::inadmissible: return "Inadmissible";
    case Errc::zero_inverse: return "ZeroInverse";
    case Errc::singular: return "Singular";
    case Errc::inconsistent: return "Inconsistent";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::construction_failed: return "ConstructionFailed";
    case Errc::parse_error: return "ParseError";
    case Errc::version_mismatch: return "VersionMismatch";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::wrong_helper_shape: return "WrongHelperShape";
    case Errc::singular_basis: return "SingularBasis";
    case Errc::field_too_small: return "FieldTooSmall";
    case Errc::already_failed: return "AlreadyFailed";
    case Errc::double_failure: return "DoubleFailure";
    case Errc::no_failure: return "NoFailure";
    case Errc::bad_subset: return "BadSubset";
    case Errc::unknown_node: return "UnknownNode";
    case Errc::overflow: return "Overflow";
    case Errc::io_error: return "IoError";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace msr
