#include "sqfree/primes.hpp"

#include <algorithm>

#include "sqfree/modarith.hpp"

namespace sqfree {

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  for_each_prime(2, limit, [&](u64 p) { out.push_back(p); });
  return out;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& visit, u64 segment) {
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) {
    visit(2);
    lo = 3;
  }
  if (lo > hi) return;
  if (lo % 2 == 0) ++lo;
  if (hi >= (u64(1) << 62)) throw RangeError("prime sieve bound too large");

  // base primes up to sqrt(hi), by a plain sieve
  const u64 root = int_sqrt(hi);
  std::vector<char> base_mark(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 3; i <= root; i += 2) {
    if (!base_mark[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += 2 * i) base_mark[j] = 0;
  }

  // segment index k stands for the odd number lo + 2k
  std::vector<char> mark;
  for (u64 start = lo; start <= hi;) {
    u64 count = std::min(segment, (hi - start) / 2 + 1);
    u64 last = start + 2 * (count - 1);
    mark.assign(count, 1);
    for (u64 q : base) {
      if (q * q > last) break;
      u64 first = std::max(q * q, (start + q - 1) / q * q);
      if (first % 2 == 0) first += q;
      for (u64 j = first; j <= last; j += 2 * q) mark[(j - start) / 2] = 0;
    }
    for (u64 k = 0; k < count; ++k) {
      u64 n = start + 2 * k;
      if (mark[k] && n >= 3) visit(n);
    }
    if (last >= hi) break;
    start = last + 2;
  }
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(9999);
  return primes;
}

}  // namespace sqfree
