#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

enum class Errc {
  InvalidArgument,
  NotOneUnit,
  PrecisionExhausted,
  SupersingularInput,
  NoCandidate,
  Ambiguous,
  NotMultiplicative,
  BadSupport,
  DegreeOverflow,
  LevelMismatch,
  SingularMatrix,
  SupportViolation,
  ZeroD,
  NotOrdinary,
  Inconsistent,
  RankCapExceeded,
  Imprimitive,
  BadConductor,
  AdditiveReduction,
  ReconstructionFailed,
  NotSplitMultiplicative,
  RankPositive,
  NotSameType,
  NoCandidateBelowX,
  ParseError,
  SingularCurve,
  CorruptCache,
  Usage,
  Io,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace iwasawa
