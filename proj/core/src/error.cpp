#include "iwasawa/error.hpp"

namespace iwasawa {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotOneUnit: return "NotOneUnit";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::SupersingularInput: return "SupersingularInput";
    case Errc::NoCandidate: return "NoCandidate";
    case Errc::Ambiguous: return "Ambiguous";
    case Errc::NotMultiplicative: return "NotMultiplicative";
    case Errc::BadSupport: return "BadSupport";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SupportViolation: return "SupportViolation";
    case Errc::ZeroD: return "ZeroD";
    case Errc::NotOrdinary: return "NotOrdinary";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::RankCapExceeded: return "RankCapExceeded";
    case Errc::Imprimitive: return "Imprimitive";
    case Errc::BadConductor: return "BadConductor";
    case Errc::AdditiveReduction: return "AdditiveReduction";
    case Errc::ReconstructionFailed: return "ReconstructionFailed";
    case Errc::NotSplitMultiplicative: return "NotSplitMultiplicative";
    case Errc::RankPositive: return "RankPositive";
    case Errc::NotSameType: return "NotSameType";
    case Errc::NoCandidateBelowX: return "NoCandidateBelowX";
    case Errc::ParseError: return "ParseError";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::CorruptCache: return "CorruptCache";
    case Errc::Usage: return "Usage";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace iwasawa
