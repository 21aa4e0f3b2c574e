// Command-line front end: condition numbers of Fourier submatrices, sweeps,
// error-term tables and self-checks.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vcond/experiments.hpp"
#include "vcond/verify.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct IndexSpec {
  bool contiguous = true;
  long start = 1;
  long length = 0;
  std::vector<long> list;
};

// "start:len" or a comma-separated list of 1-based indices.
IndexSpec parse_index_spec(const std::string& text) {
  IndexSpec s;
  auto to_long = [&](const std::string& t) {
    std::size_t used = 0;
    long v = std::stol(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  };
  try {
    std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
      s.start = to_long(text.substr(0, colon));
      s.length = to_long(text.substr(colon + 1));
      return s;
    }
    s.contiguous = false;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) s.list.push_back(to_long(item));
  } catch (const std::exception&) {
    throw vcond::DomainError("cannot parse index set '" + text + "'");
  }
  if (s.list.empty()) throw vcond::DomainError("empty index set");
  return s;
}

// 1-based indices of a start:len interval (cyclic) or the explicit list.
std::vector<long> expand(const IndexSpec& s, long N) {
  if (!s.contiguous) return s.list;
  if (s.length < 1 || s.length > N || s.start < 1 || s.start > N) {
    throw vcond::DomainError("interval " + std::to_string(s.start) + ":" + std::to_string(s.length) +
                             " does not fit N = " + std::to_string(N));
  }
  std::vector<long> out;
  for (long i = 0; i < s.length; ++i) out.push_back((s.start - 1 + i) % N + 1);
  return out;
}

bool failed(const vcond::KappaRow& r) { return r.status == "unconverged" || r.status.rfind("error", 0) == 0; }

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw vcond::ConfigError("cannot open " + path + " for writing");
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition numbers of Vandermonde matrices and Fourier submatrices"};
  app.require_subcommand(1);

  long N = 0;
  int bits = 0;
  std::string rows_spec, cols_spec, out_path, alpha_text = "1/8,1/4,3/8,1/2,5/8,3/4,7/8", beta_text;
  std::string n_list = "64,128", suite = "all";
  int jobs = 1;
  std::uint64_t seed = 0;
  bool reproducible = false, force = false, header = false, random_rows = false;

  auto* kappa = app.add_subcommand("kappa", "log condition number and bounds for one F_{S,T}");
  kappa->add_option("--N", N, "Fourier matrix size")->required()->check(CLI::PositiveNumber);
  kappa->add_option("--rows", rows_spec, "row set: start:len or i,j,k (1-based)")->required();
  kappa->add_option("--cols", cols_spec, "column set: start:len or i,j,k (1-based)")->required();
  kappa->add_option("--bits", bits, "working precision (default 512 for N <= 512)");
  kappa->add_flag("--force", force, "run even when the precision budget is exceeded");
  kappa->add_flag("--header", header, "print the CSV header first");

  auto* sweep = app.add_subcommand("sweep", "grid of contiguous cells, one CSV row per (alpha, beta)");
  sweep->add_option("--N", N, "Fourier matrix size")->required()->check(CLI::Range(2L, 1L << 20));
  sweep->add_option("--bits", bits, "working precision (default 512 for N <= 512)");
  sweep->add_option("--alpha-grid", alpha_text, "row fractions, e.g. 1/8,1/4,0.5");
  sweep->add_option("--beta-grid", beta_text, "column fractions (default: alpha grid)");
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed, "seed for random row sets");
  sweep->add_flag("--random-rows", random_rows, "draw row sets at random instead of contiguous");
  sweep->add_flag("--reproducible", reproducible, "omit the timestamp comment");
  sweep->add_flag("--force", force, "run even when the precision budget is exceeded");

  auto* err = app.add_subcommand("error-term", "log kappa minus the corollary estimate on square cells");
  err->add_option("--N-list", n_list, "comma-separated even sizes >= 16");
  err->add_option("--alpha-grid", alpha_text, "fractions p/N");
  err->add_option("--bits", bits, "working precision (default 256)");
  err->add_option("--out", out_path, "output file (default stdout)");
  err->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  err->add_flag("--force", force, "run even when the precision budget is exceeded");

  auto* ver = app.add_subcommand("verify", "run self-check suites");
  ver->add_option("suite", suite, "clausen, potentials, lagrange, matrices, bounds, measures or all");
  ver->add_option("--seed", seed, "seed for random inputs");
  ver->add_option("--bits", bits, "working precision (default 256)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*kappa) {
      if (bits == 0) bits = vcond::default_bits(N);
      std::vector<long> rows = expand(parse_index_spec(rows_spec), N);
      std::vector<long> cols = expand(parse_index_spec(cols_spec), N);
      vcond::PrecisionContext ctx(bits);
      vcond::KappaRow row = vcond::kappa_row(ctx, N, rows, cols, force);
      if (row.status == "over_budget") {
        std::cerr << "predicted log kappa exceeds the " << bits << "-bit budget; raise --bits or pass --force\n";
        return kUsage;
      }
      if (header) std::cout << vcond::csv_header_extended() << '\n';
      std::cout << vcond::format_row(row, true) << '\n';
      return failed(row) ? kNumerical : 0;
    }

    if (*sweep) {
      vcond::SweepConfig cfg;
      cfg.N = N;
      cfg.bits = bits;
      cfg.alpha_grid = vcond::parse_grid(alpha_text);
      cfg.beta_grid = vcond::parse_grid(beta_text.empty() ? alpha_text : beta_text);
      cfg.contiguous = !random_rows;
      cfg.jobs = jobs;
      cfg.seed = seed;
      cfg.reproducible = reproducible;
      cfg.force = force;
      const int b = bits == 0 ? vcond::default_bits(N) : bits;
      if (!force) {
        for (double a : cfg.alpha_grid) {
          for (double c : cfg.beta_grid) {
            if (vcond::exceeds_budget(N, vcond::cell_size(N, a), vcond::cell_size(N, c), b, cfg.contiguous)) {
              std::cerr << "predicted log kappa exceeds the " << b << "-bit budget at alpha=" << a
                        << " beta=" << c << "; raise --bits or pass --force\n";
              return kUsage;
            }
          }
        }
      }
      std::vector<vcond::KappaRow> rows = vcond::run_sweep(cfg);
      std::ofstream file;
      vcond::write_csv(open_out(out_path, file), rows, reproducible);
      for (const auto& r : rows) {
        if (failed(r)) return kNumerical;
      }
      return 0;
    }

    if (*err) {
      if (bits == 0) bits = 256;
      std::vector<long> Ns;
      std::stringstream ss(n_list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          Ns.push_back(std::stol(item));
        } catch (const std::exception&) {
          throw vcond::DomainError("cannot parse N '" + item + "'");
        }
      }
      std::vector<double> alphas = vcond::parse_grid(alpha_text);
      if (!force) {
        for (long n : Ns) {
          for (double a : alphas) {
            long p = vcond::cell_size(n, a);
            if (n >= 2 && vcond::exceeds_budget(n, p, p, bits, true)) {
              std::cerr << "predicted log kappa exceeds the " << bits << "-bit budget at N=" << n
                        << "; raise --bits or pass --force\n";
              return kUsage;
            }
          }
        }
      }
      auto rows = vcond::run_error_term(Ns, alphas, bits, jobs, force);
      std::ofstream file;
      vcond::write_error_term_csv(open_out(out_path, file), rows);
      for (const auto& r : rows) {
        if (failed(r.row)) return kNumerical;
      }
      return 0;
    }

    if (*ver) {
      if (bits == 0) bits = 256;
      vcond::VerifyReport report = vcond::run_verify(suite, seed, bits);
      for (const auto& c : report.checks) {
        const char* state = c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL";
        std::cout << state << "  " << c.suite << ": " << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << '\n';
      }
      return report.all_passed() ? 0 : kNumerical;
    }
  } catch (const vcond::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const vcond::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return 0;
}
