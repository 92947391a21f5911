#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "iwasawa/cli.hpp"
#include "iwasawa/error.hpp"

int main(int argc, char** argv) {
  using namespace iwasawa;
  CLI::App app{"iwbench: p-adic L-functions and Iwasawa-theoretic checks for elliptic curves"};
  app.require_subcommand(0, 1);

  CliConfig cfg;
  std::string curves, pairs, out_path, tol = "1e-6";
  bool no_timestamp = false;
  app.add_option("--p", cfg.p, "prime")->check(CLI::Range(3L, 100000L));
  app.add_option("--level", cfg.level, "Gamma level n")->check(CLI::Range(0, 8));
  app.add_option("--prec", cfg.precision, "p-adic digits M")->check(CLI::Range(1, 200));
  app.add_option("--degree", cfg.degree, "series truncation d")->check(CLI::Range(1, 16));
  app.add_option("--nmax", cfg.nmax, "a_n table size for the cache")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "complex tolerance");
  app.add_option("--denom-bound", cfg.denom_bound, "starting denominator bound B")->check(CLI::Range(1L, 1024L));
  app.add_option("--twist-bound", cfg.twist_bound, "twist-search bound |D| < X")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "directory for a_n and L-value caches");
  app.add_option("--curves", curves, "curve file")->check(CLI::ExistingFile);
  app.add_option("--pairs", pairs, "pairs file")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report file (default stdout)");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 64U));
  app.add_flag("--no-timestamp", no_timestamp, "omit timestamps for byte-identical reruns");

  std::string command;
  const std::map<std::string, std::string> about{
      {"classify", "conductor, Tate data and reduction type at p"},
      {"lvalue", "root number, analytic rank, L-values and L-dagger at p"},
      {"padic-l", "measure, tau series, ledger and interpolation check"},
      {"verify-mtt", "order of vanishing against analytic rank; split primes add the derivative check"},
      {"verify-conj11", "difference and leading-term verdicts for each pair"},
      {"verify-eq13", "finite-level product identity for each pair"},
      {"twist-search", "quadratic twists with nonvanishing L(E_D,1) split at p"},
      {"selfcheck", "quick invariants of every module"}};
  for (const auto& name : command_names())
    app.add_subcommand(name, about.at(name))->callback([&command, name] { command = name; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    cfg.tol = Real(tol);
    cfg.timestamps = !no_timestamp;
    if (!curves.empty()) cfg.curves = parse_curve_file(curves);
    if (!pairs.empty()) cfg.pairs = parse_pairs_file(pairs);
  } catch (const std::exception& e) {
    std::cerr << "iwbench: " << e.what() << "\n";
    return 2;
  }

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "iwbench: cannot write " << out_path << "\n";
      return 2;
    }
    out = &file;
  }
  RunSummary s = run_command(command, cfg, *out);
  if (s.exit_code == 2) std::cerr << "iwbench: " << command << " needs " << (command.rfind("verify-conj11", 0) == 0 || command == "verify-eq13" ? "--pairs and --curves" : "--curves") << "\n";
  std::cerr << "iwbench: " << s.records << " records, " << s.holds << " hold, " << s.fails << " fail, " << s.indeterminate
            << " indeterminate, " << s.errors << " errors\n";
  return s.exit_code;
}
