#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flexline {

enum class Errc {
  NotPrime,
  ExcludedCharacteristic,
  Reducible,
  DegreeOverflow,
  NoEmbedding,
  ParseError,
  LeadingCoefficientVanishes,
  SingularMatrix,
  DegenerateFrame,
  ReducibleConic,
  BaseNotOnConic,
  DegeneratePoints,
  EliminationDegenerate,
  SingularPoint,
  LineIsComponent,
  HessianVanishes,
  WildFlexBehavior,
  DegenerateConfiguration,
  GroupTooLarge,
  InadmissibleCharacteristic,
  SingularParameter,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can turn it into a structured report.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace flexline
