#pragma once

// Filtrations of Z_p + Z_p with a prescribed finite Hausdorff spectrum.

#include "hspec/arith.hpp"
#include "hspec/lattice.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hspec::spectra {

/// 0 = xi_1 < ... < xi_n = 1 together with the prime.
struct SpectrumTarget {
    std::uint64_t p = 3;
    std::vector<Rational> values;

    void validate() const;
    std::size_t size() const noexcept { return values.size(); }
};

enum class GapMode { tower, geometric, explicit_values };

/// Exponents e(0) < e(1) < ... with non-increasing ratios e(i-1)/e(i).
class GapSequence {
public:
    /// e(i) = 2^{2^i}.
    static GapSequence tower();
    /// e(i) = base^i.
    static GapSequence geometric(std::uint64_t base);
    /// e(0), e(1), ... as given.
    static GapSequence explicit_values(std::vector<BigInt> values);

    GapMode mode() const noexcept { return mode_; }
    std::uint64_t base() const noexcept { return base_; }
    const std::vector<BigInt>& values() const noexcept { return values_; }

    BigInt e(std::size_t i) const;
    /// Checks monotonicity and the ratio condition on e(0..i_max).
    void validate_window(std::size_t i_max) const;

private:
    GapMode mode_ = GapMode::tower;
    std::uint64_t base_ = 0;
    std::vector<BigInt> values_;
};

/// L_i = p^{e(i-1)} Z_p x~ + p^{e(i)} Z_p y with x~ = x + c y, c = (1 - p^{k+t}) / (1 - p^k).
struct FiltrationTerm {
    std::size_t i = 0;
    std::size_t k = 0;  // residue class, 1..n
    std::size_t j = 0;  // i = k + j n
    BigInt e_prev;      // e(i-1)
    BigInt e_cur;       // e(i)
    BigInt t;           // largest multiple of k with t <= (e(i) - e(i-1))(1 - xi_k); 0 when xi_k = 1
};

/// Exact description of the filtration for indices 1..i_max.
class Zp2Filtration {
public:
    Zp2Filtration(SpectrumTarget target, GapSequence gaps, std::size_t i_max);

    const SpectrumTarget& target() const noexcept { return target_; }
    const GapSequence& gaps() const noexcept { return gaps_; }
    std::size_t i_max() const noexcept { return terms_.size(); }
    const FiltrationTerm& term(std::size_t i) const;
    const std::vector<FiltrationTerm>& terms() const noexcept { return terms_; }

    /// log_p |L : L_i| = e(i-1) + e(i).
    BigInt log_index(std::size_t i) const;
    /// Explicit lattice L_i (i = 0 gives Z_p^2); refuses when e(i) exceeds `exponent_cap`.
    lattice::PadicLattice lattice(std::size_t i, std::uint64_t exponent_cap = 65536) const;
    /// c = (1 - p^{k+t}) / (1 - p^k), built explicitly under the same cap.
    BigInt x_tilde_coefficient(std::size_t i, std::uint64_t exponent_cap = 65536) const;

private:
    SpectrumTarget target_;
    GapSequence gaps_;
    std::vector<FiltrationTerm> terms_;
};

enum class SubgroupKind { zero, full, line, y_line };

/// H = 0, H = L, H = Z_p (p^m x + b y) or H = Z_p p^m y.
struct RationalSubgroupSpec {
    SubgroupKind kind = SubgroupKind::zero;
    std::int64_t m = 0;
    Rational b;

    /// Z_p (a_x x + a_y y) normalized so the x-coefficient is p^m.
    static RationalSubgroupSpec line_through(std::uint64_t p, const Rational& a_x, const Rational& a_y);
    /// The line Z_p z_k, z_k = x + (1 - p^k)^{-1} y.
    static RationalSubgroupSpec z_line(std::uint64_t p, std::size_t k);

    std::string describe() const;
};

struct LogIndexPair {
    BigInt numerator;
    BigInt denominator;

    Rational ratio() const { return make_ratio(numerator, denominator); }
    friend bool operator==(const LogIndexPair&, const LogIndexPair&) = default;
};

/// log_p |H + L_i : L_i| from the valuation of b - p^m c.
LogIndexPair line_logindex_closedform(const RationalSubgroupSpec& h, const Zp2Filtration& f, std::size_t i);
/// The same quantity through explicit lattices and pivot valuations.
LogIndexPair line_logindex_oracle(const RationalSubgroupSpec& h, const Zp2Filtration& f, std::size_t i,
                                  std::uint64_t exponent_cap = 65536);

/// Value the subgroup's dimension must take: xi_k when H lies in Z_p z_k, 0 for the line
/// through x + y (the top value 1 forces t = 0, so every term of its class contains
/// p^{e(i-1)} (x + y)), 1 for the other lines and the full group.
Rational expected_dimension(const RationalSubgroupSpec& h, const SpectrumTarget& target);

struct SampleScan {
    RationalSubgroupSpec sample;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> class_ratios;  // per residue class: (i, ratio)
    std::vector<Rational> cycle_minima;  // min over classes within each complete cycle
    std::optional<Rational> verdict;     // empty when inconclusive
    Rational expected;
};

struct ScanReport {
    std::vector<SampleScan> samples;
    std::vector<Rational> value_set;  // distinct conclusive verdicts, ascending
    std::size_t inconclusive = 0;
    std::size_t misclassified = 0;

    bool matches_target(const SpectrumTarget& target) const;
};

/// Classifies every sample by the minimum over residue classes within each of the last two
/// complete cycles; a verdict needs both minima within `tolerance` of one element of X.
ScanReport spectrum_scan(const Zp2Filtration& f, const std::vector<RationalSubgroupSpec>& samples,
                         double tolerance = 1e-3);

/// Lines p^m x + b y with m and v_p(b) in [0, max_valuation] and random p-unit parts of b.
std::vector<RationalSubgroupSpec> random_lines(std::uint64_t p, std::size_t count, std::mt19937_64& rng,
                                               int max_valuation = 6);

}  // namespace hspec::spectra
