#pragma once

// Full-rank Z_p-lattices held as rational matrices, group actions and the lower p-series of modules.

#include "hspec/arith.hpp"
#include "hspec/hdim.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hspec::lattice {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Sublattice of Z_p^d. The canonical basis is upper triangular with diagonal p^{a_i}; entries
/// above a pivot p^{a_j} are integers in [0, p^{a_j}). Equal lattices have equal bases.
class PadicLattice {
public:
    /// Rows generate the lattice; entries must be p-integral and the rows must span Q^d.
    PadicLattice(std::uint64_t p, const RationalMatrix& generators);

    static PadicLattice standard(std::uint64_t p, std::size_t d);
    static PadicLattice diagonal(std::uint64_t p, const std::vector<std::uint64_t>& exponents);

    std::uint64_t p() const noexcept { return p_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const RationalMatrix& basis() const noexcept { return basis_; }
    /// Pivot valuations a_i; their sum is log_p |Z_p^d : L|.
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    std::int64_t colength() const;

    bool contains(const RationalVector& v) const;
    bool contains(const PadicLattice& m) const;
    /// Coordinates of v in the canonical basis.
    RationalVector coordinates(const RationalVector& v) const;

    PadicLattice scaled(std::uint64_t k) const;  // p^k L
    PadicLattice operator+(const PadicLattice& other) const;
    /// L + Z_p v_1 + ... + Z_p v_s.
    PadicLattice plus(const RationalMatrix& vectors) const;

    friend bool operator==(const PadicLattice& a, const PadicLattice& b) {
        return a.p_ == b.p_ && a.basis_ == b.basis_;
    }

private:
    std::uint64_t p_;
    RationalMatrix basis_;
    std::vector<std::int64_t> exponents_;
};

/// Finitely many generators acting on row vectors from the right.
class GroupAction {
public:
    /// Entries p-integral, det a p-adic unit, and (g - 1)^d = 0 mod p for every generator.
    GroupAction(std::uint64_t p, std::vector<RationalMatrix> generators);

    static GroupAction trivial(std::uint64_t p, std::size_t d);

    std::uint64_t p() const noexcept { return p_; }
    std::size_t dimension() const noexcept { return d_; }
    const std::vector<RationalMatrix>& generators() const noexcept { return generators_; }

    bool preserves(const PadicLattice& m) const;

private:
    std::uint64_t p_;
    std::size_t d_;
    std::vector<RationalMatrix> generators_;
};

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RationalVector vecmul(const RationalVector& v, const RationalMatrix& m);
/// Exact inverse over Q; throws PreconditionError when singular.
RationalMatrix inverse(const RationalMatrix& m);

/// M a_G = p M + sum_g M (g - 1).
PadicLattice lambda_step(const PadicLattice& m, const GroupAction& action);
/// lambda_0 = L, ..., lambda_count.
std::vector<PadicLattice> lambda_series(const PadicLattice& l, const GroupAction& action, std::size_t count);

/// log_p |L : M| for M inside L.
std::int64_t log_index(const PadicLattice& l, const PadicLattice& m);

/// (min{k : p^k L in M}, max{k : M in p^k L}).
std::pair<std::int64_t, std::int64_t> ell_u(const PadicLattice& l, const PadicLattice& m);

/// Per index: p^c S_i in S*_i and p^c S*_i in S_i.
std::vector<bool> check_c_equivalence(const std::vector<PadicLattice>& s, const std::vector<PadicLattice>& s_star,
                                      std::uint64_t c);

/// Entries i = 1..window of log_p |H + L_i : L_i| over log_p |L_0 : L_i| for H spanned by the
/// given vectors (possibly none).
hdim::LogIndexSequence hdim_sublattice(const RationalMatrix& h_generators, const std::vector<PadicLattice>& series,
                                       std::size_t window);

}  // namespace hspec::lattice
