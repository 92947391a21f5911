#include "iwasawa/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace fs = std::filesystem;

std::string curve_hash(const CurveModel& E) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(E.label());
  for (const auto& a : E.a()) feed(a.get_str());
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string real_to_text(const Real& x) { return x.str(std::numeric_limits<Real>::max_digits10, std::ios_base::scientific); }

Real real_from_text(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw Error(Errc::CorruptCache, "bad real '" + s + "'");
  }
}

namespace {

struct CacheFile {
  std::string kind;
  std::string hash;
  std::map<std::string, std::vector<std::string>> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> w;
  for (std::string t; is >> t;) w.push_back(t);
  return w;
}

long to_long(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw Error(Errc::CorruptCache, "bad integer '" + s + "'");
  return v;
}

// nullopt when the file does not exist; CorruptCache when it is malformed.
std::optional<CacheFile> read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  CacheFile f;
  std::string line;
  if (!std::getline(in, line) || line != "# iwasawa-cache schema=" + std::to_string(kSchemaVersion))
    throw Error(Errc::CorruptCache, path.string() + ": missing or foreign schema line");
  bool in_header = true;
  while (std::getline(in, line)) {
    auto w = words(line);
    if (w.empty()) continue;
    if (in_header && w[0] == "end") {
      in_header = false;
      continue;
    }
    if (in_header) {
      if (w[0] == "kind" && w.size() == 2)
        f.kind = w[1];
      else if (w[0] == "hash" && w.size() == 2)
        f.hash = w[1];
      else
        f.header[w[0]] = std::vector<std::string>(w.begin() + 1, w.end());
    } else {
      f.rows.push_back(std::move(w));
    }
  }
  if (in_header || f.kind.empty() || f.hash.empty()) throw Error(Errc::CorruptCache, path.string() + ": truncated header");
  if (!f.header.count("rows") || f.header["rows"].size() != 1 || to_long(f.header["rows"][0]) != static_cast<long>(f.rows.size()))
    throw Error(Errc::CorruptCache, path.string() + ": row count mismatch");
  return f;
}

void write_file(const fs::path& path, const CacheFile& f) {
  static std::atomic<unsigned long> counter{0};
  fs::create_directories(path.parent_path());
  std::ostringstream tmpname;
  tmpname << path.string() << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
          << counter++;
  fs::path tmp = tmpname.str();
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot write " + tmp.string());
    out << "# iwasawa-cache schema=" << kSchemaVersion << "\n";
    out << "kind " << f.kind << "\nhash " << f.hash << "\n";
    for (const auto& [k, v] : f.header) {
      if (k == "rows") continue;
      out << k;
      for (const auto& x : v) out << " " << x;
      out << "\n";
    }
    out << "rows " << f.rows.size() << "\nend\n";
    for (const auto& r : f.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
      out << "\n";
    }
    if (!out.flush()) throw Error(Errc::Io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

DirichletCharacter parse_character(const std::string& s) {
  // chi:p^m:j
  auto c1 = s.find(':'), caret = s.find('^'), c2 = s.rfind(':');
  if (s.rfind("chi:", 0) != 0 || caret == std::string::npos || c2 <= caret) throw Error(Errc::CorruptCache, "bad character '" + s + "'");
  DirichletCharacter chi{to_long(s.substr(c1 + 1, caret - c1 - 1)), static_cast<int>(to_long(s.substr(caret + 1, c2 - caret - 1))),
                         to_long(s.substr(c2 + 1))};
  if (chi.p < 2 || chi.m < 0) throw Error(Errc::CorruptCache, "bad character '" + s + "'");
  return chi;
}

using LevelMap = std::map<DirichletCharacter, ComplexLValue>;

std::vector<std::string> lvalue_row(const DirichletCharacter& chi, const ComplexLValue& v) {
  return {chi.label(),
          real_to_text(v.value.real()),
          real_to_text(v.value.imag()),
          real_to_text(v.error),
          std::to_string(v.terms),
          std::to_string(v.conductor),
          real_to_text(v.root_number.real()),
          real_to_text(v.root_number.imag())};
}

std::map<std::pair<long, int>, LevelMap> parse_lvalues(const CacheFile& f) {
  std::map<std::pair<long, int>, LevelMap> out;
  for (const auto& r : f.rows) {
    if (r.size() != 8) throw Error(Errc::CorruptCache, "lvalue row has " + std::to_string(r.size()) + " fields");
    DirichletCharacter chi = parse_character(r[0]);
    ComplexLValue v;
    v.value = Complex(real_from_text(r[1]), real_from_text(r[2]));
    v.error = real_from_text(r[3]);
    v.terms = to_long(r[4]);
    v.conductor = to_long(r[5]);
    v.root_number = Complex(real_from_text(r[6]), real_from_text(r[7]));
    out[{chi.p, chi.m}][chi] = v;
  }
  // The header lists the characters; every one must be present.
  std::size_t listed = f.header.count("characters") ? f.header.at("characters").size() : 0;
  std::size_t found = 0;
  for (const auto& [key, level] : out) found += level.size();
  if (listed != found) throw Error(Errc::CorruptCache, "character list does not match rows");
  return out;
}

}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::path_for(const std::string& label, const std::string& kind) const { return dir_ / (label + "." + kind); }

void Cache::warn(const std::string& msg) {
  std::lock_guard<std::mutex> lock(mu_);
  warnings_.push_back(msg);
}

std::vector<std::string> Cache::warnings() const {
  std::lock_guard<std::mutex> lock(mu_);
  return warnings_;
}

std::vector<long> Cache::an(const CurveData& E, long nmax) {
  fs::path path = path_for(E.label(), "an");
  std::string hash = curve_hash(E.model());
  try {
    if (auto f = read_file(path)) {
      if (f->kind != "an") throw Error(Errc::CorruptCache, path.string() + ": wrong kind");
      if (f->hash != hash) {
        warn(path.string() + ": curve hash mismatch, rebuilding");
      } else {
        if (!f->header.count("nmax") || f->header["nmax"].size() != 1) throw Error(Errc::CorruptCache, path.string() + ": no nmax");
        long stored = to_long(f->header["nmax"][0]);
        if (static_cast<long>(f->rows.size()) != stored) throw Error(Errc::CorruptCache, path.string() + ": nmax mismatch");
        if (stored >= nmax) {
          std::vector<long> a(static_cast<std::size_t>(nmax + 1), 0);
          for (long i = 0; i < nmax; ++i) {
            const auto& r = f->rows[static_cast<std::size_t>(i)];
            if (r.size() != 2 || to_long(r[0]) != i + 1) throw Error(Errc::CorruptCache, path.string() + ": bad row");
            a[static_cast<std::size_t>(i + 1)] = to_long(r[1]);
          }
          return a;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CorruptCache) throw;
    warn(std::string(e.what()) + ", rebuilding");
  }
  std::vector<long> a = an_coeffs(E, nmax);
  CacheFile f{"an", hash, {{"nmax", {std::to_string(nmax)}}}, {}};
  for (long i = 1; i <= nmax; ++i) f.rows.push_back({std::to_string(i), std::to_string(a[static_cast<std::size_t>(i)])});
  write_file(path, f);
  return a;
}

std::map<DirichletCharacter, ComplexLValue> Cache::twisted_level(LFunction& L, long p, int k) {
  fs::path path = path_for(L.label(), "lvalues");
  std::string hash = curve_hash(L.curve().model());
  std::map<std::pair<long, int>, LevelMap> stored;
  try {
    if (auto f = read_file(path)) {
      if (f->kind != "lvalues") throw Error(Errc::CorruptCache, path.string() + ": wrong kind");
      if (f->hash != hash)
        warn(path.string() + ": curve hash mismatch, rebuilding");
      else
        stored = parse_lvalues(*f);
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CorruptCache) throw;
    warn(std::string(e.what()) + ", rebuilding");
    stored.clear();
  }
  auto it = stored.find({p, k});
  if (it != stored.end()) {
    L.preload_level(p, k, it->second);
    return it->second;
  }
  LevelMap level = L.twisted_level(p, k);
  stored[{p, k}] = level;
  CacheFile f{"lvalues", hash, {}, {}};
  auto& chars = f.header["characters"];
  for (const auto& [key, lv] : stored)
    for (const auto& [chi, v] : lv) {
      chars.push_back(chi.label());
      f.rows.push_back(lvalue_row(chi, v));
    }
  write_file(path, f);
  return level;
}

void Cache::warm(LFunction& L, long nmax) {
  if (nmax > 0) L.preload_coefficients(an(L.curve(), nmax));
}

}  // namespace iwasawa
