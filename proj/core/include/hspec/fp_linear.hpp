#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hspec {

/// Arithmetic in the prime field F_p, p < 2^31.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t from_int(std::int64_t x) const noexcept {
        const std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

using FpVector = std::vector<std::uint32_t>;

/// A subspace of F_p^n held in reduced row echelon form. Rows are sorted by pivot
/// column, pivots are 1 and pivot columns are cleared in every other row, so two
/// equal subspaces always have identical row lists.
class EchelonBasis {
public:
    EchelonBasis(PrimeField field, std::size_t length);

    const PrimeField& field() const noexcept { return field_; }
    std::size_t length() const noexcept { return length_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    bool full() const noexcept { return rows_.size() == length_; }

    /// Adds v to the span; returns true when the rank grew.
    bool insert(const FpVector& v);
    bool contains(const FpVector& v) const;
    /// v minus its projection onto the span along the pivot coordinates.
    FpVector reduce(FpVector v) const;

    const std::vector<FpVector>& rows() const noexcept { return rows_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) {
        return a.length_ == b.length_ && a.rows_ == b.rows_;
    }

private:
    PrimeField field_;
    std::size_t length_;
    std::vector<FpVector> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace hspec
