#pragma once

// The free F_p[pi]-Lie algebra: Lambda_n = sum_{m<=n} pi^{n-m} L_m, for odd p.

#include "hspec/fplie.hpp"

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hspec::mixedlie {

using fplie::BasisIndex;
using fplie::FreeLieAlgebra;
using fplie::HallBasis;
using fplie::LieElement;

/// pi^k * c with c a basic commutator (the core part).
struct GeneralizedBasicCommutator {
    int pi_power = 0;
    BasisIndex core = 0;

    int weight(const HallBasis& basis) const { return pi_power + basis.weight(core); }

    friend auto operator<=>(const GeneralizedBasicCommutator&, const GeneralizedBasicCommutator&) = default;
};

/// dim Lambda_n = sum_{m=1}^n witt_dimension(d, m).
BigInt lambda_dim(int d, int n);
/// dim Lambda_n^o = dim Lambda_n - d for n >= 2 (0 for n = 1).
BigInt lambda_circ_dim(int d, int n);
/// l^o(n) = sum_{m=2}^n dim Lambda_m^o.
BigInt lambda_circ_partial(int d, int n);
/// dim Lambda / I_{n+1} = sum_{m<=n} dim Lambda_m.
BigInt lambda_quotient_dim(int d, int n);

/// Finite F_p-combination of generalized basic commutators.
class MixedElement {
public:
    using Terms = std::map<GeneralizedBasicCommutator, std::uint32_t>;

    explicit MixedElement(PrimeField field) : field_(field) {}

    const PrimeField& field() const noexcept { return field_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const GeneralizedBasicCommutator& g, std::uint32_t coeff);
    MixedElement& operator+=(const MixedElement& other);
    MixedElement scaled(std::uint32_t c) const;
    friend MixedElement operator+(MixedElement a, const MixedElement& b) { return a += b; }

    std::map<int, std::size_t> weights(const HallBasis& basis) const;
    std::optional<int> homogeneous_weight(const HallBasis& basis) const;

    friend bool operator==(const MixedElement& a, const MixedElement& b) {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }

private:
    PrimeField field_;
    Terms terms_;
};

/// Multiplication by pi^k: every term's pi-power grows by k.
MixedElement pi_apply(const MixedElement& a, int k);

/// Free Lie algebra together with the pi-grading; p must be odd.
class MixedLieAlgebra {
public:
    MixedLieAlgebra(int d, int max_weight, std::uint32_t p,
                    const fplie::Limits& limits = fplie::Limits::from_environment());

    const FreeLieAlgebra& lie() const noexcept { return lie_; }
    const HallBasis& basis() const noexcept { return lie_.basis(); }
    const PrimeField& field() const noexcept { return lie_.field(); }
    int generators() const noexcept { return basis().generators(); }
    int max_weight() const noexcept { return lie_.max_weight(); }

    MixedElement zero() const { return MixedElement(field()); }
    MixedElement element(const GeneralizedBasicCommutator& g, std::uint32_t coeff = 1) const;
    /// The pi^0 copy of an element of L.
    MixedElement embed(const LieElement& a) const;

    /// [pi^a c, pi^b c'] = pi^{a+b} [c, c'], truncated at `cutoff`.
    MixedElement bracket(const MixedElement& a, const MixedElement& b, int cutoff) const;

    /// Number of weight-n generalized basic commutators (= lambda_dim).
    std::size_t degree_size(int n) const;
    /// Coordinates in Lambda_n, ordered by ascending pi-power and then core rank.
    FpVector coordinates(const MixedElement& a, int n) const;

    std::string format(const GeneralizedBasicCommutator& g) const;
    std::string format(const MixedElement& a) const;
    /// "pi^k*core", "pi*core" or "core".
    GeneralizedBasicCommutator parse_generalized(std::string_view text) const;

private:
    FreeLieAlgebra lie_;
};

/// Graded subspace H of Lambda stored as blocks B(m, j) = { c in L_m : pi^j c in H }; the
/// degree-n part is the direct sum over j of pi^j B(n-j, j).
class MixedGradedSubspace {
public:
    MixedGradedSubspace(const HallBasis& basis, PrimeField field, int cutoff);

    int cutoff() const noexcept { return cutoff_; }
    const EchelonBasis& block(int core_weight, int pi_power) const;
    EchelonBasis& block(int core_weight, int pi_power);

    std::size_t dim(int n) const;
    std::vector<std::size_t> dims() const;
    /// Every block contained in its pi-shift: B(m, j) subset of B(m, j+1).
    bool pi_stable() const;
    bool contains(const MixedLieAlgebra& algebra, const MixedElement& a) const;
    /// Canonical reduced echelon rows of H_n in Lambda_n coordinates.
    std::vector<FpVector> degree_rows(const MixedLieAlgebra& algebra, int n) const;

    friend bool operator==(const MixedGradedSubspace& a, const MixedGradedSubspace& b) {
        return a.cutoff_ == b.cutoff_ && a.blocks_ == b.blocks_;
    }

private:
    std::size_t slot(int core_weight, int pi_power) const;

    int cutoff_;
    std::vector<EchelonBasis> blocks_;
};

/// Degree-by-degree closure under brackets with the generators and under pi. Degrees up to
/// `completed_degree()` are final for the generators registered so far; new generators must
/// not be lighter than the degree currently being worked on.
class MixedClosureBuilder {
public:
    MixedClosureBuilder(const MixedLieAlgebra& algebra, int cutoff);

    int completed_degree() const noexcept { return degree_; }
    int cutoff() const noexcept { return subspace_.cutoff(); }
    /// Closes the next degree.
    void advance();
    /// Registers pi^k * core for a homogeneous core. A generator of the current degree is
    /// inserted immediately and the return value tells whether it enlarged H; heavier ones
    /// wait for their degree.
    bool add_generator(int pi_power, const LieElement& core);
    bool add_generator(const GeneralizedBasicCommutator& g);

    const MixedGradedSubspace& subspace() const noexcept { return subspace_; }

private:
    struct Generator {
        int pi_power;
        int core_weight;
        LieElement core;
    };

    bool insert_generator(const Generator& g);
    bool insert_fresh(int core_weight, int pi_power, const FpVector& v);

    const MixedLieAlgebra* algebra_;
    MixedGradedSubspace subspace_;
    int degree_ = 0;
    std::vector<Generator> active_;
    std::vector<Generator> pending_;
    std::map<std::pair<int, int>, std::vector<FpVector>> fresh_;
};

/// Smallest pi-stable, bracket-closed graded subspace containing the generators, up to `cutoff`.
MixedGradedSubspace mixed_closure(const MixedLieAlgebra& algebra,
                                  std::span<const GeneralizedBasicCommutator> generators, int cutoff);

/// Mixed closure of the pi^0 copies of homogeneous elements of L.
MixedGradedSubspace mixed_closure_of_lie(const MixedLieAlgebra& algebra, std::span<const LieElement> generators,
                                         int cutoff);

/// Delta_n = (sum_{m<=n} dim H_m) / (sum_{m<=n} dim Lambda_m).
std::vector<Rational> mixed_density_sequence(const MixedGradedSubspace& h, int cutoff);

/// Keeps, in weight order, only generators not already in the closure of the earlier ones.
std::vector<GeneralizedBasicCommutator> drop_redundant_generators(
    const MixedLieAlgebra& algebra, std::span<const GeneralizedBasicCommutator> generators, int cutoff);

struct DensityTraceRow {
    int n = 0;
    BigInt l_circ;         // l^o(n)
    BigInt partial_dim;    // sum_{m<=n} dim H_m
    Rational lower_bound;  // alpha - 1/l^o(n)
    Rational ratio;        // partial_dim / l^o(n)
    std::size_t added = 0;
    bool stalled = false;
    bool condition_i = false;   // lower_bound <= ratio
    bool condition_ii = false;  // ratio <= alpha
};

struct DensityConstruction {
    Rational alpha;
    int cutoff = 0;
    std::vector<GeneralizedBasicCommutator> generators;
    std::vector<DensityTraceRow> trace;
    std::vector<std::size_t> dims;  // dim H_n, n = 1..cutoff

    bool condition_i_everywhere() const;
    std::size_t condition_ii_stages() const;
};

/// Builds generators of a subalgebra of [Lambda, Lambda] whose partial ratios track alpha:
/// a stage adds weight-k generalized basic commutators (ascending pi-power, then core rank)
/// while the ratio stays <= alpha, and stalls while the inherited ratio already exceeds alpha.
DensityConstruction construct_density_subalgebra(const MixedLieAlgebra& algebra, const Rational& alpha,
                                                 int cutoff);
DensityConstruction construct_density_subalgebra(const Rational& alpha, int d, std::uint32_t p, int cutoff);

}  // namespace hspec::mixedlie
