#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mealy {

enum class errc {
  alphabet_too_small,
  duplicate_symbol,
  missing_transition,
  non_bijective_output,
  unknown_state,
  letter_out_of_range,
  alphabet_mismatch,
  unknown_family,
  depth_too_small,
  not_materializable,
  cycle_bound_too_small,
  period_bound_invalid,
  block_factor_too_small,
  partition_not_total,
  partition_overlap,
  syntax_error,
  invalid_argument,
};

constexpr std::string_view name(errc code) noexcept {
  switch (code) {
    case errc::alphabet_too_small: return "AlphabetTooSmall";
    case errc::duplicate_symbol: return "DuplicateSymbol";
    case errc::missing_transition: return "MissingTransition";
    case errc::non_bijective_output: return "NonBijectiveOutput";
    case errc::unknown_state: return "UnknownState";
    case errc::letter_out_of_range: return "LetterOutOfRange";
    case errc::alphabet_mismatch: return "AlphabetMismatch";
    case errc::unknown_family: return "UnknownFamily";
    case errc::depth_too_small: return "DepthTooSmallForRequestedLength";
    case errc::not_materializable: return "NotMaterializable";
    case errc::cycle_bound_too_small: return "CycleBoundTooSmall";
    case errc::period_bound_invalid: return "PeriodBoundInvalid";
    case errc::block_factor_too_small: return "BlockFactorTooSmall";
    case errc::partition_not_total: return "PartitionNotTotal";
    case errc::partition_overlap: return "PartitionOverlap";
    case errc::syntax_error: return "SyntaxError";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace mealy
