#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "oracles.hpp"
#include "sqfree/congruence.hpp"
#include "sqfree/density.hpp"
#include "sqfree/primes.hpp"

using namespace sqfree;
using Dec = boost::multiprecision::cpp_dec_float_100;

namespace {

const QuarticPoly kCyc8 = QuarticPoly::cyc8();
const QuarticPoly kFerm2 = QuarticPoly::ferm2();
const QuarticPoly kDihed = QuarticPoly::dihed();

// Truncated product from scans: rho(p^2) = rho(p) at primes not dividing
// disc * lead (simple roots lift uniquely), a scan mod p^2 otherwise.
Dec oracle_product(const QuarticPoly& f, u64 P, const std::vector<u64>& bad) {
  Dec prod = 1;
  for (u64 p = 2; p <= P; ++p) {
    if (!oracle::prime(p)) continue;
    const bool ramified = std::find(bad.begin(), bad.end(), p) != bad.end();
    const auto r = ramified ? oracle::roots(f, p * p).size() : oracle::roots(f, p).size();
    prod *= Dec(p * p - r) / Dec(p * p);
  }
  return prod;
}

Dec dec(const std::string& s) { return Dec(s); }

}  // namespace

TEST_CASE("local factors") {
  const auto a = local_factor(kCyc8, 17);
  CHECK(a.to_string() == "1 - 4/289");
  CHECK(a.rho_p2 == 4);
  CHECK(a.numerator == 285);
  CHECK(a.denominator == 289);
  CHECK(local_factor(kCyc8, 3).to_string() == "1");
  CHECK(local_factor(kCyc8, 3).rho_p2 == 0);
  CHECK(local_factor(kFerm2, 2).to_string() == "1");
  CHECK(local_factor(kDihed, 5).to_string() == "1 - 2/25");
  CHECK(local_factor(kFerm2, 3).to_string() == "1 - 2/9");
  CHECK_THROWS_AS(local_factor(kCyc8, 9), InvalidArgument);
  CHECK_THROWS_AS(local_factor(QuarticPoly({1, 0, -2, 0, 1}), 3), InvalidArgument);
  // p | disc with a root mod p^2: (T - 3)(T + 3)(T^2 + 1) at p = 3 has roots 3 and 6 mod 9
  const QuarticPoly g({1, 0, -8, 0, -9});
  CHECK(local_factor(g, 3).rho_p2 == oracle::roots(g, 9).size());
}

TEST_CASE("truncated product agrees with a decimal oracle") {
  for (const auto& f : {kCyc8, kFerm2, kDihed, QuarticPoly::phi5(), QuarticPoly::phi12(), QuarticPoly({3, 0, 0, 1, -7})}) {
    const u64 P = 1500;
    const auto bad = bad_primes(f);
    Dec want = oracle_product(f, P, bad);
    for (u64 p : bad)
      if (p > P) want *= Dec(p * p - oracle::roots(f, p * p).size()) / Dec(p * p);
    const auto e = euler_product(f, P);
    INFO(f.to_string());
    CHECK(abs(dec(e.point) - want) < Dec("1e-45"));
    CHECK(dec(e.upper) >= want);
    CHECK(dec(e.lower) <= want * exp(Dec(-5) / P));
    CHECK(dec(e.lower) >= want * exp(Dec(-5) / P) - Dec("1e-45"));
    CHECK(e.truncation_bound == P);
  }
}

TEST_CASE("estimates are ordered and nest as the bound grows") {
  for (const auto& f : {kCyc8, kFerm2, kDihed}) {
    Dec prev_point = 2, prev_lower = -1, prev_upper = 2;
    for (u64 P : {100, 1000, 10000, 100000, 1000000}) {
      const auto e = euler_product(f, P);
      const Dec lo = dec(e.lower), pt = dec(e.point), hi = dec(e.upper);
      CHECK(lo <= pt);
      CHECK(pt <= hi);
      CHECK(pt <= prev_point);
      CHECK(lo >= prev_lower - Dec("1e-25"));
      CHECK(hi <= prev_upper + Dec("1e-25"));
      prev_point = pt;
      prev_lower = lo;
      prev_upper = hi;
    }
  }
}

TEST_CASE("width shrinks like 5/P") {
  const auto e = euler_product(kCyc8, 100000);
  const double w = std::stod(e.width());
  CHECK(w > 0);
  CHECK(w < 5.0 / 100000);
  CHECK(std::stod(euler_product(kCyc8, 1000000).width()) < w);
}

TEST_CASE("factors used counts the non-trivial local factors") {
  u64 ones = 0;
  for (u64 p : primes_up_to(10000)) ones += p % 8 == 1;
  CHECK(euler_product(kCyc8, 10000).factors_used == ones);
  u64 dihed = 0;
  for (u64 p : primes_up_to(10000)) dihed += rho_p(kDihed, p) > 0 && p != 2;
  CHECK(euler_product(kDihed, 10000).factors_used == dihed);
}

TEST_CASE("restricted products") {
  const auto full = euler_product(kCyc8, 100000);
  const auto one = euler_product_restricted(kCyc8, 100000, {1}, {});
  CHECK(one.point == full.point);
  CHECK(one.lower == full.lower);
  CHECK(one.upper == full.upper);

  const auto d = euler_product(kDihed, 100000);
  CHECK(euler_product_restricted(kDihed, 100000, {1, 5}, {}).point == d.point);

  // no solvable prime in the allowed classes: the empty product
  const auto empty = euler_product_restricted(kCyc8, 100, {3, 5, 7}, {});
  CHECK(dec(empty.point) == 1);
  CHECK(dec(empty.upper) == 1);
  CHECK(empty.factors_used == 0);

  // excluding 5 divides out exactly the factor 1 - 2/25
  const auto ex = euler_product_restricted(kDihed, 100000, {1, 5}, {5});
  CHECK(abs(dec(ex.point) * Dec(23) / 25 - dec(d.point)) < Dec("1e-45"));

  CHECK_THROWS_AS(euler_product_restricted(kCyc8, 1000, {4}, {}), InvalidArgument);
}

TEST_CASE("tabulated model") {
  const std::map<int, u64> table{{1, 4}, {5, 2}};
  const auto m = euler_product_model(2000, table, {});
  Dec want = 1;
  for (u64 p : primes_up_to(2000)) {
    if (p % 8 == 1) want *= Dec(p * p - 4) / Dec(p * p);
    if (p % 8 == 5) want *= Dec(p * p - 2) / Dec(p * p);
  }
  CHECK(abs(dec(m.point) - want) < Dec("1e-45"));
  CHECK_THROWS_AS(euler_product_model(2000, {{1, 5}}, {}), InvalidArgument);
}

TEST_CASE("the cyclotomic model coincides with the true product for T^4 + 1") {
  const auto a = euler_product(kCyc8, 200000);
  const auto b = euler_product_model(200000, {{1, 4}}, {});
  CHECK(a.point == b.point);
}

TEST_CASE("degenerate inputs") {
  // 4T^4 + 4 is always divisible by 4, so no value is squarefree
  const auto z = euler_product(QuarticPoly({4, 0, 0, 0, 4}), 1000);
  CHECK(dec(z.point) == 0);
  CHECK(dec(z.upper) == 0);
  CHECK(z.factors_used == 0);
  // 2T^4 + 2 has fixed divisor 2, which is squarefree: a genuine product
  CHECK(dec(euler_product(QuarticPoly({2, 0, 0, 0, 2}), 1000).point) > 0);
  CHECK_THROWS_AS(euler_product(QuarticPoly({1, 0, -2, 0, 1}), 1000), InvalidArgument);
  CHECK_THROWS_AS(euler_product(kCyc8, 99), InvalidArgument);
  CHECK_NOTHROW(euler_product(kCyc8, 100));
}

TEST_CASE("precision and determinism") {
  DensityOptions opts;
  opts.digits = 80;
  const auto e = euler_product(kFerm2, 50000, opts);
  CHECK(e.point.size() == 82);
  DensityOptions one;
  one.workers = 1;
  DensityOptions four;
  four.workers = 4;
  const auto a = euler_product(kDihed, 3'000'000, one);
  const auto b = euler_product(kDihed, 3'000'000, four);
  CHECK(a.point == b.point);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}

TEST_CASE("enclosure and digit matching") {
  const auto e = euler_product(kCyc8, 1000);
  CHECK(e.encloses(e.point));
  CHECK(e.encloses(e.lower));
  CHECK(e.encloses(e.upper));
  CHECK_FALSE(e.encloses("0.5"));
  CHECK_FALSE(e.encloses("1"));
  DensityEstimate fake;
  fake.point = "0.9638024999";
  fake.lower = fake.upper = fake.point;
  CHECK(matches_to_digits(fake, "0.963802"));
  CHECK_FALSE(matches_to_digits(fake, "0.963803"));
  fake.point = "0.9638025001";
  CHECK(matches_to_digits(fake, "0.963803"));
}

TEST_CASE("variants") {
  const auto v = density_variants(kDihed, 10000);
  std::vector<std::string> names;
  for (const auto& x : v) names.push_back(x.name);
  CHECK(names == std::vector<std::string>{"full", "excluding_5", "half_full", "half_excluding_5", "table",
                                          "table_excluding_5", "half_table", "half_table_excluding_5"});
  CHECK(v[0].estimate.point == euler_product(kDihed, 10000).point);
  CHECK(abs(dec(v[2].estimate.point) * 2 - dec(v[0].estimate.point)) < Dec("1e-45"));
  CHECK(abs(dec(v[1].estimate.point) * 23 / 25 - dec(v[0].estimate.point)) < Dec("1e-45"));
  CHECK(v[4].estimate.point == euler_product_model(10000, {{1, 4}, {5, 2}}, {}).point);
  CHECK(density_variants(kCyc8, 1000).size() == 4);
  // a zero-density polynomial yields four zero variants
  for (const auto& x : density_variants(QuarticPoly({4, 0, 0, 0, 4}), 1000)) CHECK(dec(x.estimate.point) == 0);
}
