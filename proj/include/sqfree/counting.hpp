#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sqfree/density.hpp"
#include "sqfree/poly.hpp"

namespace sqfree {

/// Closed interval lo <= n <= hi; empty when lo > hi.
struct Interval {
  u64 lo = 1;
  u64 hi = 2;

  static Interval dyadic(u64 x);  // [x, 2x]
  bool empty() const { return lo > hi; }
  u64 length() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class ExactStrategy {
  automatic,  // per_value while L <= kPerValueScale * max|f|^(1/12), sieved otherwise
  per_value,  // factor every |f(n)| on its own
  sieved,     // divide out primes up to cbrt(max |f(n)|) over blocks of n
};

struct CountOptions {
  unsigned workers = 0;  // 0 = default_workers()
  ExactStrategy strategy = ExactStrategy::automatic;
};

/// Scale of the length cutoff between the two exact strategies.
inline constexpr double kPerValueScale = 100.0;
/// Largest hi for which count_sieve picks the full divisor range by itself.
inline constexpr u64 kFullSieveMaxHi = 3000;

/// mu^2(|f(n)|) for every n in iv, with f(n) = 0 counted as not squarefree.
std::vector<unsigned char> squarefree_flags(const QuarticPoly& f, const Interval& iv, const CountOptions& opts = {});

/// #{n in iv : |f(n)| squarefree}.
u64 count_exact(const QuarticPoly& f, const Interval& iv, const CountOptions& opts = {});

/// #{n in iv : d^2 | f(n)} from the roots of f mod d^2.
u64 count_by_divisor(const QuarticPoly& f, u64 d, const Interval& iv);

struct SieveResult {
  i64 count = 0;            // sum of mu(d) * #{n : d^2 | f(n)} over the support
  std::string main_term;    // L * sum mu(d) rho(d^2) / d^2, L = length of iv
  std::string error_term;   // count - main_term
  u64 d_bound = 0;
  u64 support_size = 0;     // squarefree d <= d_bound with rho(d^2) > 0
};

/// Inclusion-exclusion over squarefree d <= d_bound. Without a bound the full
/// range d^2 <= max |f(n)| is used, which requires iv.hi <= kFullSieveMaxHi.
SieveResult count_sieve(const QuarticPoly& f, const Interval& iv, std::optional<u64> d_bound = std::nullopt,
                        unsigned workers = 0);

enum class CountMethod { exact, sieve, both };

struct CountReport {
  Interval interval;
  std::optional<u64> exact_count;
  std::optional<SieveResult> sieve;
  std::optional<std::string> predicted;  // c_f * L
};

/// Runs the requested methods; with `both` a disagreement under the full
/// divisor range throws Inconsistency.
CountReport count_report(const QuarticPoly& f, const Interval& iv, CountMethod method, std::optional<u64> d_bound,
                         const DensityEstimate* density, const CountOptions& opts = {});

struct ScanRow {
  u64 x = 0;
  u64 count = 0;
  std::string main;        // c_f * L
  std::string error;       // count - main
  std::string predicted;   // c_f * L
  std::string deviation;   // |count - c_f * L|
  std::string normalized;  // deviation / x^(1/2 + epsilon)
  double epsilon = 0.0;
  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

/// One row per x, counting over [x, 2x].
std::vector<ScanRow> scan_error(const QuarticPoly& f, const std::vector<u64>& xs, const DensityEstimate& c,
                                double epsilon, const CountOptions& opts = {});

struct EmpiricalDensity {
  Interval interval;
  u64 count = 0;
  double value = 0.0;       // count / L
  double half_width = 0.0;  // 3 sqrt(value (1 - value) / L), a heuristic band
};

EmpiricalDensity empirical_density(const QuarticPoly& f, const Interval& iv, const CountOptions& opts = {});

struct VariantCheck {
  std::string name;
  double point = 0.0;
  double distance = 0.0;  // |point - empirical|
  bool within_band = false;
  bool matches_reference = false;  // point rounds to the reference decimal
};

struct Adjudication {
  EmpiricalDensity empirical;
  std::vector<VariantCheck> checks;
  std::optional<std::string> matched;  // set when exactly one variant is within the band
  std::string reference;
  std::vector<std::string> reference_matches;  // variants that round to the reference
  bool reference_is_matched = false;

  bool consistent() const { return matched.has_value(); }
};

/// Compares each variant with the empirical density and with a reference
/// decimal such as a published constant.
Adjudication adjudicate(const std::vector<DensityVariant>& variants, const EmpiricalDensity& empirical,
                        const std::string& reference);

}  // namespace sqfree
