#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace hspec {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Valuation reported for zero.
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

bool is_prime(std::uint64_t n);

/// p-adic valuation; kInfiniteValuation for zero.
std::int64_t valuation(const BigInt& x, std::uint64_t p);
std::int64_t valuation(const Rational& x, std::uint64_t p);

/// True when the denominator of x is coprime to p.
bool is_p_integral(const Rational& x, std::uint64_t p);

BigInt pow_big(std::uint64_t base, std::uint64_t exponent);
BigInt pow_big(std::uint64_t base, const BigInt& exponent);

/// Residue of a p-integral rational modulo `modulus` (a power of p), in [0, modulus).
BigInt residue(const Rational& x, const BigInt& modulus);

/// num/den in canonical form; den must be nonzero.
Rational make_ratio(const BigInt& num, const BigInt& den);

/// floor(x) for a rational.
BigInt floor_rational(const Rational& x);

/// Parses "a", "-a" or "a/b" into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

/// Convenience: x converted to double (only for plot data and tolerance checks).
double to_double(const Rational& x);

}  // namespace hspec
