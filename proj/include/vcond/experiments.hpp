#pragma once

// Condition-number sweeps over Fourier submatrices, emitted as CSV.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vcond/bounds.hpp"
#include "vcond/matrix_lab.hpp"

namespace vcond {

/// Column names of every sweep and kappa CSV.
const std::string& csv_header();

struct KappaRow {
  long N = 0;
  long p = 0;
  long q = 0;
  long s_start = 1;
  long t_start = 1;
  int bits = 0;
  /// ok, singular, unconverged, over_budget, or error: <message>.
  std::string status;
  Real sigma_max;
  Real sigma_min;
  Real log_kappa;
  Real log_kappa_over_N;
  /// (pi/2)(min(p, q) - pq/N) / N.
  Real barnett_rate;
  /// Corollary estimate of log kappa.
  Real cor_bound;
  Real catalan_cap;
  /// log_kappa - cor_bound.
  Real error_term;
  Regime regime = Regime::general;
  /// Per-node Vandermonde rate at n = max(p, q) - 1, eps = 2pi/N; NaN when undefined.
  Real thm_main;
};

/// csv_header() plus the regime and thm_main columns printed by single-matrix queries.
const std::string& csv_header_extended();

/// One CSV line without the trailing newline. Numbers use the shortest decimal
/// form that round-trips at the row's precision; values that were not computed
/// are empty.
std::string format_row(const KappaRow& row, bool extended = false);

/// Bits used when none are requested: 512 up to N = 512, then enough for the
/// Catalan cap plus the 64-bit margin.
int default_bits(long N);

/// True when the corollary estimate of log kappa exceeds bits log 2 - 64.
bool exceeds_budget(long N, long p, long q, int bits, bool both_contiguous);

/// Spectral data and all bounds for F_{S,T} with 1-based index sets. Cyclic
/// intervals are shifted to start at 1, which leaves the singular values
/// unchanged; s_start and t_start record the requested starts, or 0 for sets
/// that are not intervals. Numerical failures are recorded in the status
/// column rather than thrown; invalid index sets raise DomainError.
KappaRow kappa_row(const PrecisionContext& ctx, long N, const std::vector<long>& rows,
                   const std::vector<long>& cols, bool force = false);
KappaRow kappa_row(const PrecisionContext& ctx, const SubmatrixSpec& spec, bool force = false);

struct SweepConfig {
  long N = 64;
  int bits = 0;  // 0 selects default_bits(N)
  std::vector<double> alpha_grid;
  std::vector<double> beta_grid;
  bool contiguous = true;
  int jobs = 1;
  /// Row sets for non-contiguous sweeps are drawn from this seed.
  std::uint64_t seed = 0;
  bool reproducible = false;
  bool force = false;
};

/// Parses "1/8,1/4,0.5" into fractions; DomainError outside (0, 1].
std::vector<double> parse_grid(const std::string& text);

/// round(fraction N), clamped to [1, N].
long cell_size(long N, double fraction);

/// One row per (alpha, beta), alpha-major. Cells run on `jobs` worker threads
/// and come back in grid order. DomainError on an invalid config.
std::vector<KappaRow> run_sweep(const SweepConfig& cfg);

/// Header, optional timestamp comment (omitted when reproducible), then rows.
void write_csv(std::ostream& os, const std::vector<KappaRow>& rows, bool reproducible);

struct ErrorTermRow {
  long N = 0;
  double alpha = 0;
  KappaRow row;
};

/// Square contiguous cells p = q = round(alpha N) for each N.
/// DomainError unless every N is even and at least 16.
std::vector<ErrorTermRow> run_error_term(const std::vector<long>& Ns, const std::vector<double>& alphas,
                                         int bits, int jobs = 1, bool force = false);

void write_error_term_csv(std::ostream& os, const std::vector<ErrorTermRow>& rows);

}  // namespace vcond
