#pragma once

// Evaluation of words and normal forms in upper unitriangular integer matrices.

#include "hspec/collect.hpp"

#include <random>
#include <vector>

namespace hspec::collect {

/// Dense square integer matrix.
class IntMatrix {
public:
    explicit IntMatrix(std::size_t n = 0);
    static IntMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bool is_unitriangular() const;
    /// Exact inverse of a unitriangular matrix.
    IntMatrix unitriangular_inverse() const;
    IntMatrix power(const BigInt& exponent) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

private:
    std::size_t n_;
    std::vector<BigInt> a_;
};

/// u^-1 v^-1 u v.
IntMatrix group_commutator(const IntMatrix& u, const IntMatrix& v);

/// Random upper unitriangular matrix with entries above the diagonal in [lo, hi].
IntMatrix random_unitriangular(std::size_t n, std::mt19937_64& rng, int lo = -3, int hi = 3);

/// Images of x1..xd are the assignment; every matrix must be unitriangular of size class + 1.
IntMatrix evaluate_in_unitriangular(const GroupWord& w, int nilpotency_class, const HallBasis& basis,
                                    const std::vector<IntMatrix>& assignment);
IntMatrix evaluate_in_unitriangular(const NormalForm& nf, int nilpotency_class, const HallBasis& basis,
                                    const std::vector<IntMatrix>& assignment);

}  // namespace hspec::collect
