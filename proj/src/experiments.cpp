#include "vcond/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace vcond {
namespace {

std::string fmt(const Real& x) {
  if (x.is_nan()) return "";
  if (!x.is_finite()) return x > 0.0 ? "inf" : "-inf";
  return x.shortest_str();
}

// Runs fn(0..count-1) on up to `jobs` threads; each index runs exactly once.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

// Start of the cyclic interval formed by `rows`, or 0 when they are not one.
long contiguous_start(long N, const std::vector<long>& rows) {
  std::vector<long> s = rows;
  std::sort(s.begin(), s.end());
  if (static_cast<long>(s.size()) == N) return 1;
  long start = 0;
  int breaks = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    long next = i + 1 < s.size() ? s[i + 1] : s[0] + N;
    if (next - s[i] > 1) {
      ++breaks;
      start = (next - 1) % N + 1;
    }
  }
  return breaks == 1 ? start : 0;
}

}  // namespace

const std::string& csv_header() {
  static const std::string h =
      "N,p,q,s_start,t_start,bits,status,sigma_max,sigma_min,log_kappa,log_kappa_over_N,"
      "barnett_rate,cor_bound,catalan_cap,error_term";
  return h;
}

const std::string& csv_header_extended() {
  static const std::string h = csv_header() + ",regime,thm_main_rate";
  return h;
}

std::string format_row(const KappaRow& r, bool extended) {
  std::ostringstream os;
  os << r.N << ',' << r.p << ',' << r.q << ',' << r.s_start << ',' << r.t_start << ',' << r.bits << ','
     << r.status << ',' << fmt(r.sigma_max) << ',' << fmt(r.sigma_min) << ',' << fmt(r.log_kappa) << ','
     << fmt(r.log_kappa_over_N) << ',' << fmt(r.barnett_rate) << ',' << fmt(r.cor_bound) << ','
     << fmt(r.catalan_cap) << ',' << fmt(r.error_term);
  if (extended) os << ',' << to_string(r.regime) << ',' << fmt(r.thm_main);
  return os.str();
}

int default_bits(long N) {
  if (N <= 512) return 512;
  // 2GN/pi nats of conditioning plus the margin, rounded up to a multiple of 64.
  const double need = 2 * 0.915965594177219 * N / M_PI / std::log(2.0) + 64;
  return static_cast<int>(std::ceil(need / 64.0) * 64) + 64;
}

bool exceeds_budget(long N, long p, long q, int bits, bool both_contiguous) {
  PrecisionContext ctx(64);
  const double predicted = corollary_contiguous(ctx, N, p, q, both_contiguous).to_double();
  return predicted > bits * std::log(2.0) - 64;
}

KappaRow kappa_row(const PrecisionContext& ctx, long N, const std::vector<long>& rows,
                   const std::vector<long>& cols, bool force) {
  if (N < 1) throw DomainError("kappa_row: N must be positive");
  // Validates ranges and repeats of both index sets.
  SubmatrixSpec(N, rows, 1, 1);
  SubmatrixSpec(N, cols, 1, 1);
  KappaRow row;
  row.N = N;
  row.p = static_cast<long>(rows.size());
  row.q = static_cast<long>(cols.size());
  row.bits = ctx.bits();
  const Real nan = Real::nan(ctx.bits());
  row.sigma_max = row.sigma_min = row.log_kappa = row.log_kappa_over_N = row.error_term = nan;
  row.s_start = contiguous_start(N, rows);
  row.t_start = contiguous_start(N, cols);
  const bool contiguous = row.s_start != 0 && row.t_start != 0;

  BoundsReport b = bounds_report(ctx, N, row.p, row.q, contiguous);
  row.barnett_rate = b.barnett / N;
  row.cor_bound = b.cor_contiguous;
  row.catalan_cap = b.catalan_cap;
  row.regime = b.regime;
  row.thm_main = b.thm_main;

  if (!force && exceeds_budget(N, row.p, row.q, ctx.bits(), contiguous)) {
    row.status = "over_budget";
    return row;
  }
  // Cyclic shifts multiply F_{S,T} by diagonal unitaries, so contiguous sets start at 1.
  auto canonical = [N](const std::vector<long>& set, long start) {
    if (start == 0) return set;
    std::vector<long> out;
    for (long i = 0; i < static_cast<long>(set.size()); ++i) out.push_back(i % N + 1);
    return out;
  };
  try {
    SpectralReport s = svd_jacobi(ctx, general_submatrix(ctx, N, canonical(rows, row.s_start),
                                                         canonical(cols, row.t_start)));
    row.sigma_max = s.sigma_max;
    row.sigma_min = s.sigma_min;
    row.log_kappa = s.log_kappa;
    row.log_kappa_over_N = s.log_kappa / N;
    row.error_term = s.log_kappa - row.cor_bound;
    row.status = s.singular ? "singular" : "ok";
  } catch (const ConvergenceError&) {
    row.status = "unconverged";
  } catch (const Error& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

KappaRow kappa_row(const PrecisionContext& ctx, const SubmatrixSpec& spec, bool force) {
  return kappa_row(ctx, spec.N(), spec.rows(), spec.cols(), force);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw DomainError("grid: empty entry in '" + text + "'");
    double v;
    try {
      std::size_t slash = item.find('/'), used = 0;
      if (slash == std::string::npos) {
        v = std::stod(item, &used);
        if (used != item.size()) throw DomainError("");
      } else {
        std::size_t u1 = 0, u2 = 0;
        std::string num = item.substr(0, slash), den = item.substr(slash + 1);
        double a = std::stod(num, &u1), b = std::stod(den, &u2);
        if (u1 != num.size() || u2 != den.size() || b == 0) throw DomainError("");
        v = a / b;
      }
    } catch (const std::exception&) {
      throw DomainError("grid: cannot parse '" + item + "'");
    }
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("grid: fraction " + item + " outside (0, 1]");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("grid: no fractions given");
  return out;
}

long cell_size(long N, double fraction) {
  return std::clamp(static_cast<long>(std::lround(fraction * N)), 1L, N);
}

std::vector<KappaRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.N < 2) throw DomainError("sweep: N must be at least 2");
  if (cfg.alpha_grid.empty() || cfg.beta_grid.empty()) throw DomainError("sweep: empty grid");
  for (double f : cfg.alpha_grid) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("sweep: alpha outside (0, 1]");
  }
  for (double f : cfg.beta_grid) {
    if (!(f > 0.0 && f <= 1.0)) throw DomainError("sweep: beta outside (0, 1]");
  }
  if (cfg.jobs < 1) throw DomainError("sweep: jobs must be positive");
  const int bits = cfg.bits == 0 ? default_bits(cfg.N) : cfg.bits;
  const PrecisionContext check(bits);  // ConfigError below 64 bits

  const std::size_t nb = cfg.beta_grid.size();
  std::vector<KappaRow> rows(cfg.alpha_grid.size() * nb);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t idx) {
    PrecisionContext ctx(bits);
    const long p = cell_size(cfg.N, cfg.alpha_grid[idx / nb]);
    const long q = cell_size(cfg.N, cfg.beta_grid[idx % nb]);
    if (cfg.contiguous) {
      rows[idx] = kappa_row(ctx, SubmatrixSpec::contiguous(cfg.N, 1, p, 1, q), cfg.force);
      return;
    }
    // Per-cell stream, so the draw does not depend on scheduling.
    std::mt19937_64 rng(cfg.seed * 1000003u + idx);
    std::vector<long> all(cfg.N);
    std::iota(all.begin(), all.end(), 1L);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<long> chosen(all.begin(), all.begin() + p);
    std::sort(chosen.begin(), chosen.end());
    rows[idx] = kappa_row(ctx, SubmatrixSpec(cfg.N, chosen, 1, q), cfg.force);
  });
  return rows;
}

void write_csv(std::ostream& os, const std::vector<KappaRow>& rows, bool reproducible) {
  if (!reproducible) {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    os << "# generated " << buf << '\n';
  }
  os << csv_header() << '\n';
  for (const KappaRow& r : rows) os << format_row(r) << '\n';
}

std::vector<ErrorTermRow> run_error_term(const std::vector<long>& Ns, const std::vector<double>& alphas,
                                         int bits, int jobs, bool force) {
  if (Ns.empty() || alphas.empty()) throw DomainError("error_term: empty N list or alpha grid");
  for (long N : Ns) {
    if (N < 16 || N % 2 != 0) throw DomainError("error_term: each N must be even and at least 16");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw DomainError("error_term: alpha outside (0, 1]");
  }
  const PrecisionContext check(bits);
  std::vector<ErrorTermRow> out(Ns.size() * alphas.size());
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    PrecisionContext ctx(bits);
    const long N = Ns[idx / alphas.size()];
    const double a = alphas[idx % alphas.size()];
    const long p = cell_size(N, a);
    out[idx] = {N, a, kappa_row(ctx, SubmatrixSpec::contiguous(N, 1, p, 1, p), force)};
  });
  return out;
}

void write_error_term_csv(std::ostream& os, const std::vector<ErrorTermRow>& rows) {
  os << "N,alpha,p,bits,status,log_kappa,cor_bound,error_term\n";
  for (const ErrorTermRow& r : rows) {
    std::ostringstream a;
    a.precision(17);
    a << r.alpha;
    os << r.N << ',' << a.str() << ',' << r.row.p << ',' << r.row.bits << ',' << r.row.status << ','
       << fmt(r.row.log_kappa) << ',' << fmt(r.row.cor_bound) << ',' << fmt(r.row.error_term) << '\n';
  }
}

}  // namespace vcond
