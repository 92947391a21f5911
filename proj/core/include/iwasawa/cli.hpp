#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/curve.hpp"
#include "iwasawa/types.hpp"

namespace iwasawa {

// `<label> : <a1> <a2> <a3> <a4> <a6>` per line, `#` starts a comment.
std::vector<CurveModel> parse_curve_text(const std::string& text, const std::string& source = "<text>");
std::vector<CurveModel> parse_curve_file(const std::string& path);
std::string format_curve_line(const CurveModel& E);

// `<labelA> <labelB>` or `<labelA> tw:<D>` per line.
struct PairSpec {
  std::string first;
  std::string second;         // empty when twist is set
  std::optional<long> twist;  // D of a quadratic twist of `first`
  int line = 0;
};
std::vector<PairSpec> parse_pairs_text(const std::string& text, const std::string& source = "<text>");
std::vector<PairSpec> parse_pairs_file(const std::string& path);

struct CliConfig {
  long p = 5;
  int level = 1;
  int precision = 6;
  int degree = 4;
  long nmax = 100000;
  Real tol = Real(1e-6);
  long denom_bound = 256;
  long twist_bound = 50;  // X for twist-search
  std::string cache_dir;  // empty: no cache
  std::vector<CurveModel> curves;
  std::vector<PairSpec> pairs;
  unsigned threads = 1;
  bool timestamps = true;
};

const std::vector<std::string>& command_names();

struct RunSummary {
  long records = 0;
  long holds = 0;
  long fails = 0;
  long indeterminate = 0;
  long errors = 0;
  // 0 = everything holds or is indeterminate, 1 = a failure or a record
  // error, 2 = usage or I/O error.
  int exit_code = 0;
};

// Writes one JSON record per line to `out`.  Unknown commands give a usage
// error and no records.
RunSummary run_command(const std::string& name, const CliConfig& cfg, std::ostream& out);

}  // namespace iwasawa
