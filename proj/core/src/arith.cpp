#include "hspec/arith.hpp"

#include "hspec/errors.hpp"

#include <cctype>

namespace hspec {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

std::int64_t valuation(const BigInt& x, std::uint64_t p) {
    if (x == 0) return kInfiniteValuation;
    BigInt pp = static_cast<unsigned long>(p);
    // mpz_remove strips all factors of p and reports how many it removed.
    BigInt rest;
    const auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
    return static_cast<std::int64_t>(v);
}

std::int64_t valuation(const Rational& x, std::uint64_t p) {
    if (x == 0) return kInfiniteValuation;
    return valuation(BigInt(x.get_num()), p) - valuation(BigInt(x.get_den()), p);
}

bool is_p_integral(const Rational& x, std::uint64_t p) {
    return BigInt(x.get_den()) % static_cast<unsigned long>(p) != 0;
}

BigInt pow_big(std::uint64_t base, std::uint64_t exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

BigInt pow_big(std::uint64_t base, const BigInt& exponent) {
    if (!exponent.fits_ulong_p())
        throw ResourceLimitError("exponent " + exponent.get_str() + " too large to materialize");
    return pow_big(base, exponent.get_ui());
}

BigInt residue(const Rational& x, const BigInt& modulus) {
    const BigInt num = x.get_num();
    const BigInt den = x.get_den();
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0) {
        if (modulus == 1) return 0;
        throw PreconditionError("rational " + x.get_str() + " is not invertible modulo " +
                                modulus.get_str());
    }
    BigInt r = (num * inv) % modulus;
    if (r < 0) r += modulus;
    return r;
}

BigInt floor_rational(const Rational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational");
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        if (part.empty()) throw ParseError("malformed rational '" + s + "'");
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) throw ParseError("malformed rational '" + s + "'");
        for (std::size_t i = start; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw ParseError("malformed rational '" + s + "'");
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    const BigInt num = parse_int(s.substr(0, slash));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const BigInt& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return c.get_str();
}

double to_double(const Rational& x) { return x.get_d(); }

Rational make_ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw PreconditionError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace hspec
