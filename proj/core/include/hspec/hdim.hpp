#pragma once

// Finite-window estimates of liminf log-index ratios and the direct-product dimension formula.

#include "hspec/arith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hspec::hdim {

struct LogIndexEntry {
    std::int64_t index = 0;
    BigInt numerator;    // log_p |H G_i : G_i|
    BigInt denominator;  // log_p |G : G_i|

    Rational ratio() const { return make_ratio(numerator, denominator); }
};

/// Entries kept sorted by index; 0 <= numerator <= denominator and denominators strictly
/// increase between distinct indices.
class LogIndexSequence {
public:
    LogIndexSequence() = default;
    explicit LogIndexSequence(std::vector<LogIndexEntry> entries);

    void add(std::int64_t index, const BigInt& numerator, const BigInt& denominator);

    const std::vector<LogIndexEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::vector<Rational> ratios() const;
    /// Entries with index in [first, last].
    LogIndexSequence window(std::int64_t first, std::int64_t last) const;

private:
    void check_and_sort();

    std::vector<LogIndexEntry> entries_;
};

enum class Trend { stable, decreasing, oscillating };

std::string to_string(Trend t);

struct WindowVerdict {
    Rational window_min;
    std::int64_t argmin_index = 0;
    Trend trend = Trend::stable;
};

/// Minimum ratio over the window and the qualitative trend of the last third of the entries
/// (at least three). Never a limit claim.
WindowVerdict liminf_window(const LogIndexSequence& seq);

/// H = H_1 x F_2 x ... x F_k x 1 x ... x 1 inside F_1 x ... x F_r, where F_j is free pro-p of
/// rank ranks[j-1], the first t ranks are maximal and inner_dim is the dimension of H_1 in F_1.
struct ProductSubgroupSpec {
    int t = 1;
    int k = 1;
    Rational inner_dim;
    std::vector<int> ranks;
};

void validate(const ProductSubgroupSpec& spec);

/// (inner_dim + (k - 1)) / t.
Rational product_hdim(const ProductSubgroupSpec& spec);

/// log_p |F : P_{n+1}(F)| for F free pro-p of rank d.
BigInt free_factor_logindex(int d, int n);

/// Entries n = 1..window of the log-index sequence of H along the lower p-series of the product:
/// numerator inner_numerators[n-1] + (k-1) * log|F_1 : P_{n+1}|, denominator the sum over all
/// factors. inner_numerators[n-1] = log_p |H_1 P_{n+1}(F_1) : P_{n+1}(F_1)|.
LogIndexSequence product_logindex_sequence(const ProductSubgroupSpec& spec,
                                           const std::vector<BigInt>& inner_numerators, int window);

}  // namespace hspec::hdim
