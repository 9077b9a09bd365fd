#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace burn {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Err {
  BoundExceeded,
  NotAbelian,
  NotFaithful,
  NotInvariant,
  NotContainingGenericStabilizer,
  MalformedSymbol,
  ContextMismatch,
  UnsupportedDimension,
  IndexMismatch,
  FiltrationNotClosed,
  UniverseBoundExceeded,
  AssumptionViolated,
  ParseError,
  ValidationError,
  IoError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

/// Reduce a rational into [0,1); group characters take values in Q/Z.
inline Rat mod1(const Rat& q) {
  BigInt num = numerator(q), den = denominator(q);
  BigInt r = num % den;
  if (r < 0) r += den;
  return Rat(r, den);
}

inline Rat rat_of(long long n, long long d = 1) { return Rat(n, d); }

/// Order of q in Q/Z (smallest m > 0 with m*q integral).
inline long long qz_order(const Rat& q) {
  Rat r = mod1(q);
  return static_cast<long long>(denominator(r));
}

inline std::string rat_str(const Rat& q) {
  const BigInt& num = numerator(q);
  const BigInt& den = denominator(q);
  std::string s;
  // fast path: both parts fit machine words (true for every character value
  // and almost every matrix entry at desk scale)
  if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max() &&
      den <= std::numeric_limits<long long>::max()) {
    s = std::to_string(static_cast<long long>(num));
    long long d = static_cast<long long>(den);
    if (d != 1) {
      s += '/';
      s += std::to_string(d);
    }
    return s;
  }
  std::ostringstream os;
  os << num;
  if (den != 1) os << '/' << den;
  return os.str();
}

inline long long llgcd(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

inline long long lllcm(long long a, long long b) { return a / llgcd(a, b) * b; }

// FNV-1a over a string; used for content hashing of cached artifacts.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

constexpr const char* kEngineVersion = "burnclass-1";

}  // namespace burn
