#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "iwasawa/curve.hpp"
#include "iwasawa/lvalues.hpp"

namespace iwasawa {

constexpr int kSchemaVersion = 1;

// FNV-1a over the label and the five coefficients, as 16 hex digits.
std::string curve_hash(const CurveModel& E);

// Text caches `<dir>/<label>.<kind>`:
//   # iwasawa-cache schema=1
//   kind <kind>
//   hash <curve hash>
//   <header key> <value>...
//   <index> <value>...
// Files are written to a temporary name and renamed into place, so readers
// only ever see complete files.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& label, const std::string& kind) const;

  // a_0..a_nmax; reused when the stored table is at least that long.
  std::vector<long> an(const CurveData& E, long nmax);
  // Primitive twisted values mod p^k, merged into `<label>.lvalues`.
  std::map<DirichletCharacter, ComplexLValue> twisted_level(LFunction& L, long p, int k);
  // Seed L from whatever the cache already holds for these levels.
  void warm(LFunction& L, long nmax);

  // CorruptCache and stale-hash notices, in order of occurrence.
  std::vector<std::string> warnings() const;

 private:
  void warn(const std::string& msg);
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::vector<std::string> warnings_;
};

// Exact text form of a Real (round-trips bit for bit).
std::string real_to_text(const Real& x);
Real real_from_text(const std::string& s);

}  // namespace iwasawa
