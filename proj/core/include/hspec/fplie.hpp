#pragma once

// Free Lie algebra over F_p on d generators, presented in a Hall basis.

#include "hspec/arith.hpp"
#include "hspec/fp_linear.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hspec::fplie {

using BasisIndex = std::uint32_t;

/// Explicit resource caps; exceeding any of them raises ResourceLimitError.
struct Limits {
    std::size_t max_basis_size = 2'000'000;
    int max_weight = 40;

    /// Defaults overridden by HSPEC_MAX_BASIS / HSPEC_MAX_WEIGHT when set.
    static Limits from_environment();
};

/// One element of a Hall basis. The global index in the basis is its rank in the total order.
struct BasicCommutator {
    int generator = 0;  // 1..d for a generator leaf, 0 for a bracket
    BasisIndex left = 0;
    BasisIndex right = 0;
    int weight = 1;

    bool is_generator() const noexcept { return generator != 0; }
};

/// dim L_n of the free Lie algebra on d generators: (1/n) sum_{m|n} mu(m) d^{n/m}.
BigInt witt_dimension(int d, int n);

/// Moebius function.
int moebius(int n);

/// All basic commutators of weight <= max_weight. Weight-1 elements are x1 < ... < xd;
/// within a weight the new elements are ordered lexicographically by (rank(u), rank(v)).
class HallBasis {
public:
    HallBasis(int d, int max_weight, const Limits& limits = Limits::from_environment());

    int generators() const noexcept { return d_; }
    int max_weight() const noexcept { return max_weight_; }
    std::size_t size() const noexcept { return elements_.size(); }

    const BasicCommutator& operator[](BasisIndex i) const { return elements_.at(i); }
    int weight(BasisIndex i) const { return elements_.at(i).weight; }

    BasisIndex offset(int n) const;
    std::size_t count(int n) const;
    std::span<const BasicCommutator> weight_slice(int n) const;

    BasisIndex generator(int i) const;
    /// Index of [u,v] when it is a basic commutator within the cutoff.
    std::optional<BasisIndex> find(BasisIndex u, BasisIndex v) const;
    /// The inductive conditions: u > v, and v >= z whenever u = [y,z].
    bool is_basic_pair(BasisIndex u, BasisIndex v) const;

    std::string to_string(BasisIndex i) const;
    /// Parses a nested bracket string that names a basic commutator.
    BasisIndex parse(std::string_view text) const;

private:
    int d_;
    int max_weight_;
    std::vector<BasicCommutator> elements_;
    std::vector<BasisIndex> offsets_;  // offsets_[n] = first index of weight n, offsets_[W+1] = size
    std::unordered_map<std::uint64_t, BasisIndex> pair_index_;
};

/// A finite F_p-combination of Hall basis elements with nonzero coefficients.
class LieElement {
public:
    using Terms = std::map<BasisIndex, std::uint32_t>;

    explicit LieElement(PrimeField field) : field_(field) {}
    static LieElement basis_element(PrimeField field, BasisIndex i, std::uint32_t coeff = 1);

    const PrimeField& field() const noexcept { return field_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(BasisIndex i, std::uint32_t coeff);
    LieElement& operator+=(const LieElement& other);
    LieElement& operator-=(const LieElement& other);
    LieElement scaled(std::uint32_t c) const;
    LieElement operator-() const { return scaled(field_.neg(1)); }
    friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
    friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }

    /// Weight -> number of terms of that weight.
    std::map<int, std::size_t> weights(const HallBasis& basis) const;
    std::optional<int> homogeneous_weight(const HallBasis& basis) const;

    friend bool operator==(const LieElement& a, const LieElement& b) {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }

private:
    PrimeField field_;
    Terms terms_;
};

using SparseVector = std::vector<std::pair<BasisIndex, std::uint32_t>>;

/// Hall basis plus memoized structure constants over F_p.
class FreeLieAlgebra {
public:
    FreeLieAlgebra(int d, int max_weight, std::uint32_t p, const Limits& limits = Limits::from_environment());

    const HallBasis& basis() const noexcept { return basis_; }
    const PrimeField& field() const noexcept { return field_; }
    int max_weight() const noexcept { return basis_.max_weight(); }

    LieElement zero() const { return LieElement(field_); }
    LieElement generator(int i) const;
    LieElement element(BasisIndex i, std::uint32_t coeff = 1) const;

    /// [a,b] rewritten into the Hall basis; terms heavier than `cutoff` are dropped.
    LieElement bracket(const LieElement& a, const LieElement& b, int cutoff) const;
    LieElement bracket(const LieElement& a, const LieElement& b) const {
        return bracket(a, b, max_weight());
    }
    /// [a,b] for two basis elements with wt(a)+wt(b) <= max_weight.
    const SparseVector& bracket_basis(BasisIndex a, BasisIndex b) const;

    /// out += [g, row] where row holds coordinates in L_{row_weight}; out is in L_{row_weight+wt(g)}.
    void accumulate_bracket(const LieElement& g, const FpVector& row, int row_weight, FpVector& out) const;

    FpVector coordinates(const LieElement& a, int n) const;
    LieElement from_coordinates(const FpVector& v, int n) const;

    std::string format(const LieElement& a) const;
    /// Parses "c1*m1 + c2*m2"; monomials may be arbitrary bracket trees and are normalized.
    LieElement parse_element(std::string_view text) const;

private:
    SparseVector compute_bracket(BasisIndex a, BasisIndex b) const;
    LieElement parse_tree(std::string_view text) const;

    HallBasis basis_;
    PrimeField field_;
    mutable std::recursive_mutex cache_mutex_;
    mutable std::unordered_map<std::uint64_t, SparseVector> cache_;
};

/// Degree-wise subspace M = sum M_n of L, up to a weight cutoff, in reduced echelon form.
class GradedSubspace {
public:
    GradedSubspace(const HallBasis& basis, PrimeField field, int cutoff);

    int cutoff() const noexcept { return cutoff_; }
    const EchelonBasis& degree(int n) const { return degrees_.at(static_cast<std::size_t>(n - 1)); }
    EchelonBasis& degree(int n) { return degrees_.at(static_cast<std::size_t>(n - 1)); }
    std::size_t dim(int n) const { return degree(n).rank(); }
    std::vector<std::size_t> dims() const;

    bool contains(const FreeLieAlgebra& algebra, const LieElement& a) const;

    friend bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
        return a.cutoff_ == b.cutoff_ && a.degrees_ == b.degrees_;
    }

private:
    int cutoff_;
    std::vector<EchelonBasis> degrees_;
};

/// The whole of L up to weight `cutoff`.
GradedSubspace full_subspace(const FreeLieAlgebra& algebra, int cutoff);

/// Degree-wise span of all iterated brackets of homogeneous generators, truncated at `cutoff`.
GradedSubspace subalgebra_closure(const FreeLieAlgebra& algebra, std::span<const LieElement> generators,
                                  int cutoff);

/// delta_n = (sum_{m<=n} dim M_m) / (sum_{m<=n} dim L_m), n = 1..cutoff.
std::vector<Rational> density_sequence(const GradedSubspace& m, int cutoff);

}  // namespace hspec::fplie
