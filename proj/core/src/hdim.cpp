#include "hspec/hdim.hpp"

#include "hspec/errors.hpp"
#include "hspec/mixedlie.hpp"

#include <algorithm>

namespace hspec::hdim {

LogIndexSequence::LogIndexSequence(std::vector<LogIndexEntry> entries) : entries_(std::move(entries)) {
    check_and_sort();
}

void LogIndexSequence::add(std::int64_t index, const BigInt& numerator, const BigInt& denominator) {
    entries_.push_back({index, numerator, denominator});
    check_and_sort();
}

void LogIndexSequence::check_and_sort() {
    for (const auto& e : entries_) {
        if (e.denominator <= 0) throw PreconditionError("log-index denominators must be positive");
        if (e.numerator < 0 || e.numerator > e.denominator)
            throw PreconditionError("log-index numerator outside [0, denominator]");
    }
    std::sort(entries_.begin(), entries_.end(), [](const LogIndexEntry& a, const LogIndexEntry& b) {
        if (a.index != b.index) return a.index < b.index;
        if (a.denominator != b.denominator) return a.denominator < b.denominator;
        return a.numerator < b.numerator;
    });
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const auto& prev = entries_[i - 1];
        const auto& cur = entries_[i];
        if (cur.index != prev.index && cur.denominator <= prev.denominator)
            throw PreconditionError("log-index denominators must increase with the index");
    }
}

std::vector<Rational> LogIndexSequence::ratios() const {
    std::vector<Rational> out;
    for (const auto& e : entries_) out.push_back(e.ratio());
    return out;
}

LogIndexSequence LogIndexSequence::window(std::int64_t first, std::int64_t last) const {
    std::vector<LogIndexEntry> out;
    for (const auto& e : entries_)
        if (e.index >= first && e.index <= last) out.push_back(e);
    return LogIndexSequence(std::move(out));
}

std::string to_string(Trend t) {
    switch (t) {
        case Trend::stable: return "stable";
        case Trend::decreasing: return "decreasing";
        case Trend::oscillating: return "oscillating";
    }
    return "stable";
}

WindowVerdict liminf_window(const LogIndexSequence& seq) {
    if (seq.empty()) throw PreconditionError("liminf window of an empty sequence");
    const std::vector<Rational> r = seq.ratios();
    WindowVerdict v;
    v.window_min = r.front();
    v.argmin_index = seq.entries().front().index;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] < v.window_min) {
            v.window_min = r[i];
            v.argmin_index = seq.entries()[i].index;
        }

    const std::size_t tail = std::min(r.size(), std::max<std::size_t>(3, (r.size() + 2) / 3));
    int last_sign = 0;
    bool falling = false;
    bool rising = false;
    bool flips = false;
    for (std::size_t i = r.size() - tail + 1; i < r.size(); ++i) {
        const int s = cmp(r[i], r[i - 1]);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) flips = true;
        last_sign = s;
        (s < 0 ? falling : rising) = true;
    }
    if (flips) v.trend = Trend::oscillating;
    else if (falling && !rising) v.trend = Trend::decreasing;
    else v.trend = Trend::stable;
    return v;
}

void validate(const ProductSubgroupSpec& spec) {
    if (spec.ranks.empty()) throw PreconditionError("product needs at least one factor");
    if (spec.t < 1 || spec.t > static_cast<int>(spec.ranks.size()))
        throw PreconditionError("t must count between 1 and r factors");
    if (spec.k < 1 || spec.k > spec.t) throw PreconditionError("k must lie in 1..t");
    if (spec.inner_dim < 0 || spec.inner_dim > 1) throw PreconditionError("inner dimension must lie in [0, 1]");
    const int d = spec.ranks.front();
    if (d < 2) throw PreconditionError("maximal factor rank must be >= 2");
    for (std::size_t j = 0; j < spec.ranks.size(); ++j) {
        if (spec.ranks[j] < 1) throw PreconditionError("factor ranks must be positive");
        if (j > 0 && spec.ranks[j] > spec.ranks[j - 1]) throw PreconditionError("factor ranks must be non-increasing");
        const bool maximal = static_cast<int>(j) < spec.t;
        if (maximal != (spec.ranks[j] == d))
            throw PreconditionError("exactly the first t factors must have maximal rank");
    }
}

Rational product_hdim(const ProductSubgroupSpec& spec) {
    validate(spec);
    Rational v = (spec.inner_dim + (spec.k - 1)) / Rational(spec.t);
    v.canonicalize();
    return v;
}

BigInt free_factor_logindex(int d, int n) { return mixedlie::lambda_quotient_dim(d, n); }

LogIndexSequence product_logindex_sequence(const ProductSubgroupSpec& spec,
                                           const std::vector<BigInt>& inner_numerators, int window) {
    validate(spec);
    if (window < 1) throw PreconditionError("window must be >= 1");
    if (inner_numerators.size() < static_cast<std::size_t>(window))
        throw PreconditionError("inner numerator table shorter than the window");
    std::vector<LogIndexEntry> entries;
    for (int n = 1; n <= window; ++n) {
        const BigInt first = free_factor_logindex(spec.ranks.front(), n);
        const BigInt& inner = inner_numerators[static_cast<std::size_t>(n - 1)];
        if (inner < 0 || inner > first) throw PreconditionError("inner numerator outside [0, log|F_1 : P_n|]");
        BigInt den = 0;
        for (int d : spec.ranks) den += free_factor_logindex(d, n);
        entries.push_back({n, inner + (spec.k - 1) * first, den});
    }
    return LogIndexSequence(std::move(entries));
}

}  // namespace hspec::hdim
