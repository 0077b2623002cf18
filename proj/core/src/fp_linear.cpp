#include "hspec/fp_linear.hpp"

#include "hspec/arith.hpp"
#include "hspec/errors.hpp"

#include <algorithm>
#include <string>

namespace hspec {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31))
        throw PreconditionError("coefficient modulus " + std::to_string(p) + " is not a supported prime");
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw PreconditionError("inverse of zero in F_p");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e) {
        if (e & 1) result = result * base % p_;
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

EchelonBasis::EchelonBasis(PrimeField field, std::size_t length) : field_(field), length_(length) {}

FpVector EchelonBasis::reduce(FpVector v) const {
    if (v.size() != length_) throw PreconditionError("vector length mismatch in echelon reduction");
    const std::uint64_t p = field_.p();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::uint32_t c = v[pivots_[i]];
        if (c == 0) continue;
        const std::uint64_t m = p - c;
        const FpVector& row = rows_[i];
        for (std::size_t k = pivots_[i]; k < length_; ++k)
            if (row[k]) v[k] = static_cast<std::uint32_t>((v[k] + m * row[k]) % p);
    }
    return v;
}

bool EchelonBasis::contains(const FpVector& v) const {
    const FpVector r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool EchelonBasis::insert(const FpVector& v) {
    if (full()) {
        if (v.size() != length_) throw PreconditionError("vector length mismatch in echelon insert");
        return false;
    }
    FpVector r = reduce(v);
    const auto it = std::find_if(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; });
    if (it == r.end()) return false;
    const std::size_t pivot = static_cast<std::size_t>(it - r.begin());
    const std::uint32_t scale = field_.inv(r[pivot]);
    for (std::size_t k = pivot; k < length_; ++k) r[k] = field_.mul(r[k], scale);

    const std::uint64_t p = field_.p();
    for (auto& row : rows_) {
        const std::uint32_t c = row[pivot];
        if (c == 0) continue;
        const std::uint64_t m = p - c;
        for (std::size_t k = pivot; k < length_; ++k)
            if (r[k]) row[k] = static_cast<std::uint32_t>((row[k] + m * r[k]) % p);
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, pivot);
    rows_.insert(rows_.begin() + pos, std::move(r));
    return true;
}

}  // namespace hspec
