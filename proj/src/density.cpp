#include "sqfree/density.hpp"

#include <algorithm>
#include <functional>

#include "sqfree/bigfloat.hpp"
#include "sqfree/congruence.hpp"
#include "sqfree/parallel.hpp"
#include "sqfree/primes.hpp"

namespace sqfree {

namespace {

constexpr u64 kMinBound = 100;
constexpr u64 kTailConstant = 5;
constexpr u64 kBlock = u64(1) << 20;
constexpr mpfr_prec_t kParseBits = 1024;

struct Term {
  u64 p;
  u64 rho;
};

void require_separable(const QuarticPoly& f) {
  if (!f.is_separable()) throw InvalidArgument("polynomial " + f.to_string() + " is not separable");
}

int class_of(u64 p) { return p == 2 ? 2 : static_cast<int>(p % 8); }

// (p, rho) for primes p <= P with rho != 0, ascending; blocks run in parallel.
std::vector<Term> collect(u64 P, unsigned workers, const std::function<u64(u64)>& rho_of) {
  const std::size_t blocks = static_cast<std::size_t>((P + kBlock - 1) / kBlock);
  std::vector<std::vector<Term>> parts(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    const u64 lo = std::max<u64>(2, b * kBlock);
    const u64 hi = std::min<u64>(P, (b + 1) * kBlock - 1);
    for_each_prime(lo, hi, [&](u64 p) {
      if (u64 r = rho_of(p)) parts[b].push_back({p, r});
    });
  });
  std::vector<Term> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

DensityEstimate fold(const std::vector<Term>& terms, u64 P, bool halved, const DensityOptions& opts) {
  const mpfr_prec_t bits = bits_for_digits(opts.digits) + 32;
  BigFloat point(bits, 1.0), lower(bits, 1.0), upper(bits, 1.0), factor(bits);
  for (const Term& t : terms) {
    const u128 den = static_cast<u128>(t.p) * t.p;
    const u128 num = den - t.rho;
    factor.set_ratio(num, den, Round::nearest);
    point.mul(factor, Round::nearest);
    factor.set_ratio(num, den, Round::down);
    lower.mul(factor, Round::down);
    factor.set_ratio(num, den, Round::up);
    upper.mul(factor, Round::up);
  }
  lower.mul_exp_neg(kTailConstant, P, Round::down);
  if (halved) {
    point.mul_d(0.5, Round::nearest);
    lower.mul_d(0.5, Round::down);
    upper.mul_d(0.5, Round::up);
  }
  DensityEstimate e;
  e.point = point.to_fixed(opts.digits, Round::nearest);
  e.lower = lower.to_fixed(opts.digits, Round::down);
  e.upper = upper.to_fixed(opts.digits, Round::up);
  e.truncation_bound = P;
  e.factors_used = terms.size();
  return e;
}

DensityEstimate zero_estimate(u64 P, const DensityOptions& opts) {
  DensityEstimate e;
  e.point = e.lower = e.upper = BigFloat(64).to_fixed(opts.digits, Round::nearest);
  e.truncation_bound = P;
  return e;
}

// Terms for every prime <= P plus bad primes above P, filtered by `keep`.
std::vector<Term> true_terms(const QuarticPoly& f, u64 P, unsigned workers, const std::function<bool(u64)>& keep) {
  const auto bad = bad_primes(f);
  auto rho_of = [&](u64 p) -> u64 { return keep(p) ? rho_p2(f, p, bad) : 0; };
  std::vector<Term> terms = collect(P, workers, rho_of);
  for (u64 p : bad)
    if (p > P)
      if (u64 r = rho_of(p)) terms.push_back({p, r});
  return terms;
}

bool zero_density(const QuarticPoly& f) { return !is_squarefree(fixed_divisor(f)); }

void check_bound(u64 P) {
  if (P < kMinBound) throw InvalidArgument("truncation bound must be at least " + std::to_string(kMinBound));
}

std::vector<Term> without(const std::vector<Term>& terms, u64 p) {
  std::vector<Term> out;
  for (const Term& t : terms)
    if (t.p != p) out.push_back(t);
  return out;
}

}  // namespace

std::string LocalFactor::to_string() const {
  if (rho_p2 == 0) return "1";
  return "1 - " + std::to_string(rho_p2) + "/" + sqfree::to_string(denominator);
}

bool DensityEstimate::encloses(const std::string& decimal) const {
  // Rounding is monotone, and at 4 bits per character two distinct decimals
  // never collapse onto the same binary value, so this compares exactly.
  const std::size_t longest = std::max({lower.size(), upper.size(), decimal.size()});
  const auto bits = std::max<mpfr_prec_t>(kParseBits, static_cast<mpfr_prec_t>(4 * longest + 64));
  BigFloat lo(bits, lower, Round::nearest), hi(bits, upper, Round::nearest), x(bits, decimal, Round::nearest);
  return lo <= x && x <= hi;
}

std::string DensityEstimate::width() const {
  BigFloat lo(kParseBits, lower, Round::down), hi(kParseBits, upper, Round::up);
  mpfr_sub(hi.raw(), hi.raw(), lo.raw(), MPFR_RNDU);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.6RUe", hi.raw());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

double DensityEstimate::point_value() const { return BigFloat(kParseBits, point, Round::nearest).to_double(); }

LocalFactor local_factor(const QuarticPoly& f, u64 p) {
  require_separable(f);
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  LocalFactor lf;
  lf.p = p;
  lf.rho_p2 = rho_p2(f, p);
  lf.denominator = static_cast<u128>(p) * p;
  lf.numerator = lf.denominator - lf.rho_p2;
  return lf;
}

DensityEstimate euler_product(const QuarticPoly& f, u64 P, const DensityOptions& opts) {
  return euler_product_restricted(f, P, {1, 2, 3, 5, 7}, {}, opts);
}

DensityEstimate euler_product_restricted(const QuarticPoly& f, u64 P, const std::set<int>& classes,
                                         const std::set<u64>& exclusions, const DensityOptions& opts) {
  check_bound(P);
  require_separable(f);
  for (int c : classes)
    if (c != 2 && (c < 1 || c > 7 || c % 2 == 0)) throw InvalidArgument("residue classes must be odd classes mod 8 or 2");
  if (zero_density(f)) return zero_estimate(P, opts);
  auto keep = [&](u64 p) { return classes.count(class_of(p)) && !exclusions.count(p); };
  return fold(true_terms(f, P, opts.workers, keep), P, false, opts);
}

DensityEstimate euler_product_model(u64 P, const std::map<int, u64>& rho_by_class, const std::set<u64>& exclusions,
                                    const DensityOptions& opts) {
  check_bound(P);
  for (auto [c, r] : rho_by_class)
    if (r > 4) throw InvalidArgument("tabulated root counts above 4 break the tail bound");
  auto rho_of = [&](u64 p) -> u64 {
    if (exclusions.count(p)) return 0;
    auto it = rho_by_class.find(class_of(p));
    return it == rho_by_class.end() ? 0 : it->second;
  };
  return fold(collect(P, opts.workers, rho_of), P, false, opts);
}

std::vector<DensityVariant> density_variants(const QuarticPoly& f, u64 P, const DensityOptions& opts) {
  check_bound(P);
  require_separable(f);
  std::vector<DensityVariant> out;
  auto add_family = [&](const std::string& prefix, const std::string& what, const std::vector<Term>& terms) {
    const auto excl = without(terms, 5);
    const std::string sep = prefix.empty() ? "" : "_";
    out.push_back({prefix.empty() ? "full" : prefix, what, fold(terms, P, false, opts)});
    out.push_back({prefix + sep + "excluding_5", what + " without p = 5", fold(excl, P, false, opts)});
    out.push_back({"half_" + (prefix.empty() ? std::string("full") : prefix), "1/2 * " + what, fold(terms, P, true, opts)});
    out.push_back({"half_" + prefix + sep + "excluding_5", "1/2 * " + what + " without p = 5", fold(excl, P, true, opts)});
  };
  if (zero_density(f)) {
    for (const char* name : {"full", "excluding_5", "half_full", "half_excluding_5"})
      out.push_back({name, "zero: fixed divisor is not squarefree", zero_estimate(P, opts)});
  } else {
    add_family("", "product of 1 - rho(p^2)/p^2 over all p", true_terms(f, P, opts.workers, [](u64) { return true; }));
  }
  if (identify(f) == NamedPoly::dihed) {
    auto model = [](u64 p) -> u64 {
      if (p == 2) return 0;
      if (p % 8 == 1) return 4;
      if (p % 8 == 5) return 2;
      return 0;
    };
    add_family("table", "product with rho = 4 on p = 1 mod 8 and rho = 2 on p = 5 mod 8", collect(P, opts.workers, model));
  }
  return out;
}

bool matches_to_digits(const DensityEstimate& e, const std::string& decimal) {
  const auto dot = decimal.find('.');
  const unsigned places = dot == std::string::npos ? 0 : static_cast<unsigned>(decimal.size() - dot - 1);
  BigFloat x(kParseBits, e.point, Round::nearest);
  return x.to_fixed(places, Round::nearest) == decimal;
}

}  // namespace sqfree
