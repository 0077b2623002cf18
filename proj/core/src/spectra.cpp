#include "hspec/spectra.hpp"

#include "hspec/errors.hpp"

#include <algorithm>

namespace hspec::spectra {

namespace {

constexpr std::size_t kMaxTowerIndex = 24;

BigInt max3(const BigInt& a, const BigInt& b, const BigInt& c) { return std::max({a, b, c}); }

}  // namespace

void SpectrumTarget::validate() const {
    if (!is_prime(p)) throw PreconditionError("spectrum prime " + std::to_string(p) + " is not prime");
    if (values.size() < 2) throw PreconditionError("spectrum needs at least the values 0 and 1");
    if (values.front() != 0 || values.back() != 1) throw PreconditionError("spectrum must start at 0 and end at 1");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i])) throw PreconditionError("spectrum values must be strictly increasing");
}

// ---------------------------------------------------------------------------------------------
// GapSequence

GapSequence GapSequence::tower() { return GapSequence(); }

GapSequence GapSequence::geometric(std::uint64_t base) {
    if (base < 2) throw PreconditionError("geometric gaps need base >= 2");
    GapSequence g;
    g.mode_ = GapMode::geometric;
    g.base_ = base;
    return g;
}

GapSequence GapSequence::explicit_values(std::vector<BigInt> values) {
    GapSequence g;
    g.mode_ = GapMode::explicit_values;
    g.values_ = std::move(values);
    return g;
}

BigInt GapSequence::e(std::size_t i) const {
    switch (mode_) {
        case GapMode::tower:
            if (i > kMaxTowerIndex) throw ResourceLimitError("tower exponent index beyond " + std::to_string(kMaxTowerIndex));
            return pow_big(2, std::uint64_t{1} << i);
        case GapMode::geometric:
            return pow_big(base_, static_cast<std::uint64_t>(i));
        case GapMode::explicit_values:
            if (i >= values_.size()) throw PreconditionError("gap window does not cover index " + std::to_string(i));
            return values_[i];
    }
    return 0;
}

void GapSequence::validate_window(std::size_t i_max) const {
    std::vector<BigInt> e;
    for (std::size_t i = 0; i <= i_max; ++i) e.push_back(this->e(i));
    if (e.front() < 0) throw PreconditionError("gap exponents must be non-negative");
    for (std::size_t i = 1; i <= i_max; ++i)
        if (e[i] <= e[i - 1]) throw PreconditionError("gap exponents must be strictly increasing");
    // e(i-1)/e(i) >= e(i)/e(i+1)
    for (std::size_t i = 1; i < i_max; ++i)
        if (e[i - 1] * e[i + 1] < e[i] * e[i]) throw PreconditionError("gap ratios e(i-1)/e(i) must not increase");
}

// ---------------------------------------------------------------------------------------------
// Zp2Filtration

Zp2Filtration::Zp2Filtration(SpectrumTarget target, GapSequence gaps, std::size_t i_max)
    : target_(std::move(target)), gaps_(std::move(gaps)) {
    target_.validate();
    if (i_max < 1) throw PreconditionError("filtration window must contain at least one index");
    gaps_.validate_window(i_max);
    const std::size_t n = target_.size();
    for (std::size_t i = 1; i <= i_max; ++i) {
        FiltrationTerm term;
        term.i = i;
        term.k = (i - 1) % n + 1;
        term.j = (i - 1) / n;
        term.e_prev = gaps_.e(i - 1);
        term.e_cur = gaps_.e(i);
        const Rational& xi = target_.values[term.k - 1];
        if (xi == 1) {
            term.t = 0;
        } else {
            const Rational bound = Rational(term.e_cur - term.e_prev) * (1 - xi) / Rational(static_cast<unsigned long>(term.k));
            const BigInt q = floor_rational(bound);
            if (q < 1)
                throw PreconditionError("no positive multiple of k fits at index " + std::to_string(i) +
                                        "; the gaps are too small");
            term.t = q * static_cast<unsigned long>(term.k);
        }
        terms_.push_back(std::move(term));
    }
}

const FiltrationTerm& Zp2Filtration::term(std::size_t i) const {
    if (i < 1 || i > terms_.size()) throw PreconditionError("index outside the filtration window");
    return terms_[i - 1];
}

BigInt Zp2Filtration::log_index(std::size_t i) const {
    if (i == 0) return 0;
    const FiltrationTerm& t = term(i);
    return t.e_prev + t.e_cur;
}

BigInt Zp2Filtration::x_tilde_coefficient(std::size_t i, std::uint64_t exponent_cap) const {
    const FiltrationTerm& t = term(i);
    if (t.t > exponent_cap) throw ResourceLimitError("x~ coefficient exceeds the exponent cap");
    // (1 - p^{k+t}) / (1 - p^k) = sum_{s=0}^{t/k} p^{ks}
    const std::uint64_t steps = t.t.get_ui() / t.k;
    const BigInt pk = pow_big(target_.p, static_cast<std::uint64_t>(t.k));
    BigInt c = 0, term = 1;
    for (std::uint64_t s = 0; s <= steps; ++s) {
        c += term;
        term *= pk;
    }
    return c;
}

lattice::PadicLattice Zp2Filtration::lattice(std::size_t i, std::uint64_t exponent_cap) const {
    const std::uint64_t p = target_.p;
    if (i == 0) return lattice::PadicLattice::standard(p, 2);
    const FiltrationTerm& t = term(i);
    if (t.e_cur > exponent_cap)
        throw ResourceLimitError("e(" + std::to_string(i) + ") exceeds the exponent cap " + std::to_string(exponent_cap));
    const BigInt c = x_tilde_coefficient(i, exponent_cap);
    const Rational lo(pow_big(p, t.e_prev.get_ui()));
    const Rational hi(pow_big(p, t.e_cur.get_ui()));
    return lattice::PadicLattice(p, {{lo, lo * Rational(c)}, {Rational(0), hi}});
}

// ---------------------------------------------------------------------------------------------
// Subgroups

RationalSubgroupSpec RationalSubgroupSpec::line_through(std::uint64_t p, const Rational& a_x, const Rational& a_y) {
    if (!is_p_integral(a_x, p) || !is_p_integral(a_y, p)) throw PreconditionError("line direction must be p-integral");
    RationalSubgroupSpec h;
    if (sgn(a_x) == 0 && sgn(a_y) == 0) return h;
    if (sgn(a_x) == 0) {
        h.kind = SubgroupKind::y_line;
        h.m = valuation(a_y, p);
        return h;
    }
    h.kind = SubgroupKind::line;
    h.m = valuation(a_x, p);
    const Rational unit = a_x / Rational(pow_big(p, static_cast<std::uint64_t>(h.m)));
    h.b = a_y / unit;
    h.b.canonicalize();
    return h;
}

RationalSubgroupSpec RationalSubgroupSpec::z_line(std::uint64_t p, std::size_t k) {
    RationalSubgroupSpec h;
    h.kind = SubgroupKind::line;
    h.m = 0;
    h.b = Rational(1) / Rational(BigInt(1) - pow_big(p, static_cast<std::uint64_t>(k)));
    h.b.canonicalize();
    return h;
}

std::string RationalSubgroupSpec::describe() const {
    switch (kind) {
        case SubgroupKind::zero: return "0";
        case SubgroupKind::full: return "L";
        case SubgroupKind::y_line: return "Z_p(p^" + std::to_string(m) + " y)";
        case SubgroupKind::line: return "Z_p(p^" + std::to_string(m) + " x + " + to_string(b) + " y)";
    }
    return "?";
}

LogIndexPair line_logindex_closedform(const RationalSubgroupSpec& h, const Zp2Filtration& f, std::size_t i) {
    const FiltrationTerm& t = f.term(i);
    const std::uint64_t p = f.target().p;
    LogIndexPair out{0, t.e_prev + t.e_cur};
    switch (h.kind) {
        case SubgroupKind::zero: return out;
        case SubgroupKind::full: out.numerator = out.denominator; return out;
        case SubgroupKind::y_line:
            out.numerator = std::max(BigInt(t.e_cur - h.m), BigInt(0));
            return out;
        case SubgroupKind::line: break;
    }
    // Order of w = p^m x + b y modulo L_i: p^s w = p^{s+m} x~ + p^s (b - p^m c) y.
    const BigInt m(static_cast<long>(h.m));
    const BigInt pk = pow_big(p, static_cast<std::uint64_t>(t.k));
    Rational a = h.b - Rational(pow_big(p, static_cast<std::uint64_t>(h.m))) / Rational(BigInt(1) - pk);
    a.canonicalize();
    const BigInt shift = m + t.k + t.t;  // b - p^m c = a + p^{m+k+t} / (1 - p^k)
    std::optional<BigInt> v;
    if (sgn(a) == 0) {
        v = shift;
    } else {
        const BigInt l(static_cast<long>(valuation(a, p)));
        if (l < shift) {
            v = l;
        } else if (l > shift) {
            v = shift;
        } else {
            Rational u = a / Rational(pow_big(p, l.get_ui()));
            Rational rest = u * Rational(BigInt(1) - pk) + 1;
            rest.canonicalize();
            if (sgn(rest) != 0) v = shift + static_cast<long>(valuation(rest, p));
        }
    }
    const BigInt x_part = t.e_prev - m;
    out.numerator = v ? max3(x_part, BigInt(t.e_cur - *v), BigInt(0)) : std::max(x_part, BigInt(0));
    return out;
}

LogIndexPair line_logindex_oracle(const RationalSubgroupSpec& h, const Zp2Filtration& f, std::size_t i,
                                  std::uint64_t exponent_cap) {
    const std::uint64_t p = f.target().p;
    const lattice::PadicLattice l0 = lattice::PadicLattice::standard(p, 2);
    const lattice::PadicLattice li = f.lattice(i, exponent_cap);
    const std::int64_t den = lattice::log_index(l0, li);
    lattice::RationalMatrix gens;
    switch (h.kind) {
        case SubgroupKind::zero: break;
        case SubgroupKind::full: gens = {{1, 0}, {0, 1}}; break;
        case SubgroupKind::y_line:
            gens = {{Rational(0), Rational(pow_big(p, static_cast<std::uint64_t>(h.m)))}};
            break;
        case SubgroupKind::line:
            gens = {{Rational(pow_big(p, static_cast<std::uint64_t>(h.m))), h.b}};
            break;
    }
    const std::int64_t num = gens.empty() ? 0 : den - lattice::log_index(l0, li.plus(gens));
    return {BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))};
}

Rational expected_dimension(const RationalSubgroupSpec& h, const SpectrumTarget& target) {
    switch (h.kind) {
        case SubgroupKind::zero: return 0;
        case SubgroupKind::full:
        case SubgroupKind::y_line: return 1;
        case SubgroupKind::line: break;
    }
    const Rational pm(pow_big(target.p, static_cast<std::uint64_t>(h.m)));
    for (std::size_t k = 1; k <= target.size(); ++k) {
        Rational zk = pm / Rational(BigInt(1) - pow_big(target.p, static_cast<std::uint64_t>(k)));
        zk.canonicalize();
        if (h.b == zk) return target.values[k - 1];
    }
    if (h.b == pm) return 0;
    return 1;
}

bool ScanReport::matches_target(const SpectrumTarget& target) const { return value_set == target.values; }

ScanReport spectrum_scan(const Zp2Filtration& f, const std::vector<RationalSubgroupSpec>& samples, double tolerance) {
    const std::size_t n = f.target().size();
    const std::size_t cycles = f.i_max() / n;
    Rational tol(tolerance);
    tol.canonicalize();
    ScanReport report;
    for (const auto& h : samples) {
        SampleScan s;
        s.sample = h;
        s.expected = expected_dimension(h, f.target());
        s.class_ratios.resize(n);
        std::vector<Rational> ratio_at(f.i_max() + 1);
        for (std::size_t i = 1; i <= f.i_max(); ++i) {
            ratio_at[i] = line_logindex_closedform(h, f, i).ratio();
            s.class_ratios[f.term(i).k - 1].emplace_back(i, ratio_at[i]);
        }
        for (std::size_t c = 0; c < cycles; ++c) {
            Rational lo = ratio_at[c * n + 1];
            for (std::size_t k = 2; k <= n; ++k) lo = std::min(lo, ratio_at[c * n + k]);
            s.cycle_minima.push_back(lo);
        }
        if (cycles >= 2) {
            const Rational& last = s.cycle_minima.back();
            const Rational& before = s.cycle_minima[cycles - 2];
            const Rational* nearest = &f.target().values.front();
            for (const auto& xi : f.target().values)
                if (abs(Rational(last - xi)) < abs(Rational(last - *nearest))) nearest = &xi;
            if (abs(Rational(last - *nearest)) <= tol && abs(Rational(before - *nearest)) <= tol) s.verdict = *nearest;
        }
        if (!s.verdict) ++report.inconclusive;
        else if (*s.verdict != s.expected) ++report.misclassified;
        if (s.verdict && std::find(report.value_set.begin(), report.value_set.end(), *s.verdict) == report.value_set.end())
            report.value_set.push_back(*s.verdict);
        report.samples.push_back(std::move(s));
    }
    std::sort(report.value_set.begin(), report.value_set.end());
    return report;
}

std::vector<RationalSubgroupSpec> random_lines(std::uint64_t p, std::size_t count, std::mt19937_64& rng,
                                               int max_valuation) {
    auto unit_part = [&]() {
        std::uint64_t v;
        do v = 1 + rng() % 999;
        while (v % p == 0);
        return v;
    };
    std::vector<RationalSubgroupSpec> out;
    const std::uint64_t span = static_cast<std::uint64_t>(max_valuation) + 1;
    for (std::size_t s = 0; s < count; ++s) {
        RationalSubgroupSpec h;
        h.kind = SubgroupKind::line;
        h.m = static_cast<std::int64_t>(rng() % span);
        const std::uint64_t vb = rng() % span;
        const bool negative = rng() % 2;
        Rational u(BigInt(static_cast<unsigned long>(unit_part())), BigInt(static_cast<unsigned long>(unit_part())));
        u.canonicalize();
        h.b = u * Rational(pow_big(p, vb));
        if (negative) h.b = -h.b;
        out.push_back(h);
    }
    return out;
}

}  // namespace hspec::spectra
