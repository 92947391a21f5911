#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "iwasawa/curve.hpp"

namespace iwasawa {

// Cremona's 11a1, 37a1, 389a1, 5077a1, 14a1, 15a1.
std::vector<CurveModel> reference_curves();
CurveModel reference_curve(const std::string& label);

struct CheckOutcome {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Quick invariants of every module; `scratch` is a writable directory for
// the cache round trip.
std::vector<CheckOutcome> run_selfcheck(const std::filesystem::path& scratch);

}  // namespace iwasawa
