#include "flexline/error.hpp"

namespace flexline {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ExcludedCharacteristic: return "ExcludedCharacteristic";
    case Errc::Reducible: return "Reducible";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NoEmbedding: return "NoEmbedding";
    case Errc::ParseError: return "ParseError";
    case Errc::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::ReducibleConic: return "ReducibleConic";
    case Errc::BaseNotOnConic: return "BaseNotOnConic";
    case Errc::DegeneratePoints: return "DegeneratePoints";
    case Errc::EliminationDegenerate: return "EliminationDegenerate";
    case Errc::SingularPoint: return "SingularPoint";
    case Errc::LineIsComponent: return "LineIsComponent";
    case Errc::HessianVanishes: return "HessianVanishes";
    case Errc::WildFlexBehavior: return "WildFlexBehavior";
    case Errc::DegenerateConfiguration: return "DegenerateConfiguration";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::InadmissibleCharacteristic: return "InadmissibleCharacteristic";
    case Errc::SingularParameter: return "SingularParameter";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace flexline
