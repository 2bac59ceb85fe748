#include "sqfree/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqfree/bigfloat.hpp"
#include "sqfree/congruence.hpp"
#include "sqfree/parallel.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

namespace {

constexpr u64 kSieveBlock = u64(1) << 22;
constexpr mpfr_prec_t kBits = 256;
constexpr unsigned kPlaces = 6;

u128 magnitude(i128 v) { return static_cast<u128>(v < 0 ? -v : v); }

void check_interval(const Interval& iv) {
  if (!iv.empty() && iv.hi > static_cast<u64>(std::numeric_limits<i64>::max()))
    throw RangeError("interval endpoint exceeds the signed 64-bit range");
}

void flags_per_value(const QuarticPoly& f, u64 a, u64 b, unsigned char* out) {
  for (u64 n = a; n <= b; ++n) {
    const u128 v = magnitude(f.eval(static_cast<i128>(n)));
    out[n - a] = v != 0 && is_squarefree(v);
  }
}

// Divides out every prime up to cbrt(max |f(n)|) at its roots; what remains
// has at most two prime factors, so it is squarefree unless it is a square.
void flags_sieved(const QuarticPoly& f, u64 a, u64 b, unsigned char* out) {
  const std::size_t len = static_cast<std::size_t>(b - a + 1);
  std::vector<u128> v(len);
  u128 maxv = 1;
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = magnitude(f.eval(static_cast<i128>(a + i)));
    out[i] = v[i] != 0;
    if (v[i] == 0) v[i] = 1;
    maxv = std::max(maxv, v[i]);
  }
  const u128 limit = int_cbrt(maxv) + 1;
  if (limit > std::numeric_limits<u64>::max()) throw RangeError("values too large for the sieve");
  for_each_prime(2, static_cast<u64>(limit), [&](u64 p) {
    if (auto fast = fast_rho_p(f, p); fast && *fast == 0) return;
    for (u64 r : detail::roots_mod_prime(f, p).roots) {
      const u64 off = (r + p - a % p) % p;
      for (u64 i = off; i < len; i += p) {
        if (!out[i]) continue;
        v[i] /= p;
        if (v[i] % p == 0) out[i] = 0;
      }
    }
  });
  for (std::size_t i = 0; i < len; ++i)
    if (out[i] && v[i] > 1 && is_perfect_square(v[i])) out[i] = 0;
}

// Factoring one value costs about M^(1/4) rho steps while the sieve pays
// about M^(1/3) once, so factoring wins while L < c * M^(1/12). The constant
// comes from timing both on T^4 + 2 between 1e6 and 1e8.
ExactStrategy pick(ExactStrategy s, const QuarticPoly& f, const Interval& iv) {
  if (s != ExactStrategy::automatic) return s;
  const double m = std::max({1.0, std::fabs(static_cast<double>(f.eval(static_cast<i128>(iv.lo)))),
                             std::fabs(static_cast<double>(f.eval(static_cast<i128>(iv.hi))))});
  const double cutoff = kPerValueScale * std::pow(m, 1.0 / 12);
  return static_cast<double>(iv.length()) <= cutoff ? ExactStrategy::per_value : ExactStrategy::sieved;
}

struct Chunk {
  u64 lo, hi;
};

std::vector<Chunk> chunks(const Interval& iv, ExactStrategy s, unsigned workers) {
  const u64 len = iv.length();
  const u64 pieces = std::max<u64>(1, resolve_workers(workers));
  u64 size = (len + pieces - 1) / pieces;
  if (s == ExactStrategy::sieved) size = std::min(size, kSieveBlock);
  size = std::max<u64>(size, 1);
  std::vector<Chunk> out;
  for (u64 lo = iv.lo; lo <= iv.hi; lo += size) {
    const u64 hi = std::min(iv.hi, lo + size - 1);
    out.push_back({lo, hi});
    if (hi == iv.hi) break;
  }
  return out;
}

void fill_flags(const QuarticPoly& f, const Interval& iv, const CountOptions& opts, unsigned char* out) {
  const ExactStrategy s = pick(opts.strategy, f, iv);
  const auto parts = chunks(iv, s, opts.workers);
  parallel_for(parts.size(), opts.workers, [&](std::size_t k) {
    unsigned char* dst = out + (parts[k].lo - iv.lo);
    if (s == ExactStrategy::per_value)
      flags_per_value(f, parts[k].lo, parts[k].hi, dst);
    else
      flags_sieved(f, parts[k].lo, parts[k].hi, dst);
  });
}

i128 floor_div(i128 a, i128 m) {
  i128 q = a / m;
  if ((a % m != 0) && (a < 0)) --q;
  return q;
}

u64 count_roots_in(const std::vector<u64>& roots, u64 m, const Interval& iv) {
  u64 total = 0;
  for (u64 r : roots) {
    const i128 ri = r;
    total += static_cast<u64>(floor_div(static_cast<i128>(iv.hi) - ri, m) - floor_div(static_cast<i128>(iv.lo) - 1 - ri, m));
  }
  return total;
}

// |f(n)| <= sum |a_i| N^i for 0 <= n <= N.
u128 value_bound(const QuarticPoly& f, u64 N) {
  u128 total = 0, power = 1;
  for (int i = 0; i <= 4; ++i) {
    const u128 c = magnitude(f.coeff(i));
    u128 term;
    if (c != 0 && (__builtin_mul_overflow(c, power, &term) || __builtin_add_overflow(total, term, &total)))
      throw RangeError("polynomial values exceed 128 bits");
    if (i < 4 && __builtin_mul_overflow(power, static_cast<u128>(N), &power)) power = std::numeric_limits<u128>::max();
  }
  return total;
}

// Non-negative integer roots of f lying in iv.
u64 zeros_in(const QuarticPoly& f, const Interval& iv) {
  int shift = 0;
  while (shift < 4 && f.coeff(shift) == 0) ++shift;
  u64 z = (shift > 0 && iv.lo == 0) ? 1 : 0;
  const u64 c = static_cast<u64>(magnitude(f.coeff(shift)));
  if (c == 0) return iv.length();  // f is identically zero
  std::vector<u64> divisors{1};
  for (const auto& pp : factorize(c)) {
    const std::size_t n = divisors.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= pp.e; ++e) {
      pk *= static_cast<u64>(pp.p);
      for (std::size_t i = 0; i < n; ++i) divisors.push_back(divisors[i] * pk);
    }
  }
  for (u64 d : divisors) {
    if (d < iv.lo || d > iv.hi) continue;
    try {
      if (f.eval(static_cast<i128>(d)) == 0) ++z;
    } catch (const RangeError&) {
    }
  }
  return z;
}

struct SupportPrime {
  u64 p;
  u64 p2;
  std::vector<u64> roots;  // mod p^2
};

struct Partial {
  i64 count = 0;
  u64 support = 0;
  BigFloat main{kBits};
};

class SupportWalker {
 public:
  SupportWalker(const std::vector<SupportPrime>& primes, u64 bound, const Interval& iv, u64 zeros, Partial& acc)
      : primes_(primes), bound_(bound), iv_(iv), zeros_(zeros), acc_(acc) {
    mpfr_init2(term_, kBits);
  }
  ~SupportWalker() { mpfr_clear(term_); }

  void visit(std::size_t idx, u64 d, u64 d2, const std::vector<u64>& roots, int mu) {
    const i64 c = static_cast<i64>(count_roots_in(roots, d2, iv_)) - static_cast<i64>(zeros_);
    acc_.count += mu * c;
    ++acc_.support;
    mpfr_set_ui(term_, roots.size(), MPFR_RNDN);
    mpfr_div_ui(term_, term_, d2, MPFR_RNDN);
    if (mu > 0)
      mpfr_add(acc_.main.raw(), acc_.main.raw(), term_, MPFR_RNDN);
    else
      mpfr_sub(acc_.main.raw(), acc_.main.raw(), term_, MPFR_RNDN);

    for (std::size_t j = idx + 1; j < primes_.size(); ++j) {
      const SupportPrime& q = primes_[j];
      if (q.p > bound_ / d) break;
      const u64 inv = *inv_mod(d2 % q.p2, q.p2);
      std::vector<u64> next;
      next.reserve(roots.size() * q.roots.size());
      for (u64 a : roots)
        for (u64 b : q.roots) {
          const u64 t = static_cast<u64>(static_cast<u128>(sub_mod(b, a % q.p2, q.p2)) * inv % q.p2);
          next.push_back(a + d2 * t);
        }
      visit(j, d * q.p, d2 * q.p2, next, -mu);
    }
  }

 private:
  const std::vector<SupportPrime>& primes_;
  u64 bound_;
  Interval iv_;
  u64 zeros_;
  Partial& acc_;
  mpfr_t term_;
};

std::string fixed(const BigFloat& v, unsigned places = kPlaces) { return v.to_fixed(places, Round::nearest); }

}  // namespace

Interval Interval::dyadic(u64 x) {
  if (x > std::numeric_limits<u64>::max() / 2) throw RangeError("2x overflows");
  return Interval{x, 2 * x};
}

std::vector<unsigned char> squarefree_flags(const QuarticPoly& f, const Interval& iv, const CountOptions& opts) {
  check_interval(iv);
  std::vector<unsigned char> out(iv.length());
  if (!iv.empty()) fill_flags(f, iv, opts, out.data());
  return out;
}

u64 count_exact(const QuarticPoly& f, const Interval& iv, const CountOptions& opts) {
  check_interval(iv);
  if (iv.empty()) return 0;
  const ExactStrategy s = pick(opts.strategy, f, iv);
  const auto parts = chunks(iv, s, opts.workers);
  std::vector<u64> counts(parts.size(), 0);
  parallel_for(parts.size(), opts.workers, [&](std::size_t k) {
    std::vector<unsigned char> flags(parts[k].hi - parts[k].lo + 1);
    if (s == ExactStrategy::per_value)
      flags_per_value(f, parts[k].lo, parts[k].hi, flags.data());
    else
      flags_sieved(f, parts[k].lo, parts[k].hi, flags.data());
    counts[k] = static_cast<u64>(std::count(flags.begin(), flags.end(), 1));
  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

u64 count_by_divisor(const QuarticPoly& f, u64 d, const Interval& iv) {
  if (d == 0) throw InvalidArgument("divisor must be positive");
  if (d > 0xFFFFFFFFull) throw RangeError("d^2 exceeds 64 bits");
  check_interval(iv);
  if (iv.empty()) return 0;
  const u64 m = d * d;
  if (m == 1) return iv.length();
  return count_roots_in(roots_mod(f, m).roots, m, iv);
}

SieveResult count_sieve(const QuarticPoly& f, const Interval& iv, std::optional<u64> d_bound, unsigned workers) {
  check_interval(iv);
  SieveResult res;
  u64 D;
  if (d_bound) {
    D = *d_bound;
    if (D == 0) throw InvalidArgument("divisor bound must be positive");
    if (D > 0xFFFFFFFFull) throw RangeError("divisor bound exceeds 2^32");
  } else {
    if (!iv.empty() && iv.hi > kFullSieveMaxHi)
      throw ExplicitBoundRequired("the full divisor range is only enumerated for hi <= " + std::to_string(kFullSieveMaxHi) +
                                  "; pass an explicit divisor bound");
    D = iv.empty() ? 1 : static_cast<u64>(int_sqrt(value_bound(f, iv.hi)));
  }
  res.d_bound = D;
  if (iv.empty()) {
    res.main_term = res.error_term = fixed(BigFloat(kBits));
    return res;
  }

  const u64 zeros = zeros_in(f, iv);
  const auto bad = bad_primes(f);
  std::vector<SupportPrime> primes;
  for_each_prime(2, D, [&](u64 p) {
    if (rho_p2(f, p, bad) == 0) return;
    primes.push_back({p, p * p, roots_mod_pk(f, p, 2).roots});
  });

  std::vector<Partial> parts(primes.size());
  parallel_for(primes.size(), workers, [&](std::size_t i) {
    SupportWalker walker(primes, D, iv, zeros, parts[i]);
    walker.visit(i, primes[i].p, primes[i].p2, primes[i].roots, -1);
  });

  // d = 1
  BigFloat main(kBits, 1.0);
  res.count = static_cast<i64>(iv.length() - zeros);
  res.support_size = 1;
  for (const Partial& part : parts) {
    res.count += part.count;
    res.support_size += part.support;
    mpfr_add(main.raw(), main.raw(), part.main.raw(), MPFR_RNDN);
  }
  mpfr_mul_ui(main.raw(), main.raw(), iv.length(), MPFR_RNDN);
  BigFloat err(kBits);
  mpfr_si_sub(err.raw(), res.count, main.raw(), MPFR_RNDN);
  res.main_term = fixed(main);
  res.error_term = fixed(err);
  return res;
}

CountReport count_report(const QuarticPoly& f, const Interval& iv, CountMethod method, std::optional<u64> d_bound,
                         const DensityEstimate* density, const CountOptions& opts) {
  CountReport rep;
  rep.interval = iv;
  if (method != CountMethod::sieve) rep.exact_count = count_exact(f, iv, opts);
  if (method != CountMethod::exact) rep.sieve = count_sieve(f, iv, d_bound, opts.workers);
  if (rep.exact_count && rep.sieve && !d_bound && static_cast<i64>(*rep.exact_count) != rep.sieve->count)
    throw Inconsistency("exact count " + std::to_string(*rep.exact_count) + " differs from full sieve count " +
                        std::to_string(rep.sieve->count));
  if (density) {
    BigFloat pred(kBits, density->point, Round::nearest);
    mpfr_mul_ui(pred.raw(), pred.raw(), iv.length(), MPFR_RNDN);
    rep.predicted = fixed(pred);
  }
  return rep;
}

std::vector<ScanRow> scan_error(const QuarticPoly& f, const std::vector<u64>& xs, const DensityEstimate& c,
                                double epsilon, const CountOptions& opts) {
  if (xs.empty()) return {};
  if (!(epsilon >= 0.0) || epsilon > 1.0) throw InvalidArgument("epsilon must lie in [0, 1]");
  u64 lo = std::numeric_limits<u64>::max(), hi = 0, total = 0;
  for (u64 x : xs) {
    if (x == 0) throw InvalidArgument("x must be positive");
    const Interval iv = Interval::dyadic(x);
    lo = std::min(lo, iv.lo);
    hi = std::max(hi, iv.hi);
    total += iv.length();
  }

  // One pass over the hull when the intervals overlap enough to make it cheaper.
  const Interval hull{lo, hi};
  std::vector<u64> prefix;
  if (hull.length() <= 4 * total) {
    const auto flags = squarefree_flags(f, hull, opts);
    prefix.assign(flags.size() + 1, 0);
    for (std::size_t i = 0; i < flags.size(); ++i) prefix[i + 1] = prefix[i] + flags[i];
  }

  const BigFloat cf(kBits, c.point, Round::nearest);
  std::vector<ScanRow> rows;
  for (u64 x : xs) {
    const Interval iv = Interval::dyadic(x);
    ScanRow row;
    row.x = x;
    row.epsilon = epsilon;
    row.count = prefix.empty() ? count_exact(f, iv, opts) : prefix[iv.hi - lo + 1] - prefix[iv.lo - lo];

    BigFloat pred = cf;
    mpfr_mul_ui(pred.raw(), pred.raw(), iv.length(), MPFR_RNDN);
    BigFloat err(kBits);
    mpfr_ui_sub(err.raw(), row.count, pred.raw(), MPFR_RNDN);
    BigFloat dev(kBits);
    mpfr_abs(dev.raw(), err.raw(), MPFR_RNDN);
    BigFloat scale(kBits);
    mpfr_set_ui(scale.raw(), x, MPFR_RNDN);
    BigFloat expo(kBits, 0.5 + epsilon);
    mpfr_pow(scale.raw(), scale.raw(), expo.raw(), MPFR_RNDN);
    BigFloat norm(kBits);
    mpfr_div(norm.raw(), dev.raw(), scale.raw(), MPFR_RNDN);

    row.main = row.predicted = fixed(pred);
    row.error = fixed(err);
    row.deviation = fixed(dev);
    row.normalized = fixed(norm);
    rows.push_back(std::move(row));
  }
  return rows;
}

EmpiricalDensity empirical_density(const QuarticPoly& f, const Interval& iv, const CountOptions& opts) {
  if (iv.empty()) throw InvalidArgument("empirical density needs a non-empty interval");
  EmpiricalDensity e;
  e.interval = iv;
  e.count = count_exact(f, iv, opts);
  const double n = static_cast<double>(iv.length());
  e.value = static_cast<double>(e.count) / n;
  e.half_width = 3.0 * std::sqrt(e.value * (1.0 - e.value) / n);
  return e;
}

Adjudication adjudicate(const std::vector<DensityVariant>& variants, const EmpiricalDensity& empirical,
                        const std::string& reference) {
  Adjudication a;
  a.empirical = empirical;
  a.reference = reference;
  std::vector<std::string> within;
  for (const auto& v : variants) {
    VariantCheck c;
    c.name = v.name;
    c.point = v.estimate.point_value();
    c.distance = std::fabs(c.point - empirical.value);
    c.within_band = c.distance <= empirical.half_width;
    c.matches_reference = matches_to_digits(v.estimate, reference);
    if (c.within_band) within.push_back(c.name);
    if (c.matches_reference) a.reference_matches.push_back(c.name);
    a.checks.push_back(std::move(c));
  }
  if (within.size() == 1) {
    a.matched = within.front();
    a.reference_is_matched =
        std::find(a.reference_matches.begin(), a.reference_matches.end(), *a.matched) != a.reference_matches.end();
  }
  return a;
}

}  // namespace sqfree
