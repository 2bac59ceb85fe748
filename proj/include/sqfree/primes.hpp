#pragma once

#include <functional>
#include <vector>

#include "sqfree/types.hpp"

namespace sqfree {

/// All primes <= limit (simple odd-only Eratosthenes; fine up to ~1e9).
std::vector<u64> primes_up_to(u64 limit);

/// Calls visit(p) for every prime lo <= p <= hi in ascending order, using a
/// segmented sieve with segments of `segment` odd numbers.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit, u64 segment = u64(1) << 18);

/// Primes < 10^4, used by trial division.
const std::vector<u64>& small_primes();

}  // namespace sqfree
