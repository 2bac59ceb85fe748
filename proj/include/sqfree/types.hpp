#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqfree {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Polynomial values and other quantities that may exceed 64 bits.
using WideInt = u128;

// Error taxonomy. The CLI maps these onto exit codes 2 (invalid input),
// 3 (range/overflow) and 4 (internal inconsistency).
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RangeError : std::range_error {
  using std::range_error::range_error;
};

struct SingularRoot : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct UnsupportedRamified : RangeError {
  using RangeError::RangeError;
};

struct ExplicitBoundRequired : RangeError {
  using RangeError::RangeError;
};

struct Inconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

// Decimal rendering of 128-bit integers (iostreams do not handle them).
std::string to_string(u128 v);
std::string to_string(i128 v);

// Parses a non-negative decimal, optionally in the form "1e7" or "2^20".
u64 parse_u64(const std::string& text);
u128 parse_u128(const std::string& text);

}  // namespace sqfree
