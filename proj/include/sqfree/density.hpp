#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sqfree/poly.hpp"

namespace sqfree {

struct LocalFactor {
  u64 p = 0;
  u64 rho_p2 = 0;
  u128 numerator = 1;    // p^2 - rho_p2
  u128 denominator = 1;  // p^2

  std::string to_string() const;  // "1 - 4/289"
};

/// Truncated Euler product with a rigorous enclosure. Decimals are strings
/// rounded outward: lower towards zero, upper away from it.
struct DensityEstimate {
  std::string point;
  std::string lower;
  std::string upper;
  u64 truncation_bound = 0;
  u64 factors_used = 0;  // primes whose local factor differs from 1

  bool encloses(const std::string& decimal) const;
  /// upper - lower, rounded up.
  std::string width() const;
  double point_value() const;
};

struct DensityOptions {
  unsigned digits = 50;  // decimal places carried and printed
  unsigned workers = 0;  // 0 = default_workers()
};

/// 1 - rho_f(p^2)/p^2 for a separable f.
LocalFactor local_factor(const QuarticPoly& f, u64 p);

/// prod_{p <= P} (1 - rho_f(p^2)/p^2), with the tail above P bounded by
/// exp(-5/P) <= tail <= 1. Primes above P that divide disc(f) or the leading
/// coefficient are included explicitly since the tail bound assumes rho <= 4.
DensityEstimate euler_product(const QuarticPoly& f, u64 P, const DensityOptions& opts = {});

/// As euler_product, restricted to primes whose residue class mod 8 is in
/// `classes` (2 denotes the prime 2) and that are not listed in `exclusions`.
DensityEstimate euler_product_restricted(const QuarticPoly& f, u64 P, const std::set<int>& classes,
                                         const std::set<u64>& exclusions, const DensityOptions& opts = {});

/// prod over p <= P with p mod 8 in the map of (1 - rho/p^2), using the
/// tabulated rho instead of the true root count.
DensityEstimate euler_product_model(u64 P, const std::map<int, u64>& rho_by_class, const std::set<u64>& exclusions,
                                    const DensityOptions& opts = {});

struct DensityVariant {
  std::string name;
  std::string description;
  DensityEstimate estimate;
};

/// Competing readings of a product: the full product, the product without
/// p = 5, and half of each. For T^4 - 2T^2 + 2 the same four are also
/// computed from the tabulated root counts (4 for p = 1 mod 8, 2 for p = 5 mod 8).
std::vector<DensityVariant> density_variants(const QuarticPoly& f, u64 P, const DensityOptions& opts = {});

/// True when the point value rounds to `decimal` at that many places.
bool matches_to_digits(const DensityEstimate& e, const std::string& decimal);

}  // namespace sqfree
