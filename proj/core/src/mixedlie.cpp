#include "hspec/mixedlie.hpp"

#include "hspec/errors.hpp"

#include <algorithm>
#include <cctype>

namespace hspec::mixedlie {

BigInt lambda_dim(int d, int n) {
    if (d < 1 || n < 1) throw PreconditionError("lambda_dim needs d >= 1 and n >= 1");
    BigInt sum = 0;
    for (int m = 1; m <= n; ++m) sum += fplie::witt_dimension(d, m);
    return sum;
}

BigInt lambda_circ_dim(int d, int n) {
    if (n == 1) return 0;
    return lambda_dim(d, n) - d;
}

BigInt lambda_circ_partial(int d, int n) {
    BigInt sum = 0;
    for (int m = 2; m <= n; ++m) sum += lambda_circ_dim(d, m);
    return sum;
}

BigInt lambda_quotient_dim(int d, int n) {
    BigInt sum = 0;
    for (int m = 1; m <= n; ++m) sum += lambda_dim(d, m);
    return sum;
}

// ---------------------------------------------------------------------------------------------
// MixedElement

void MixedElement::add_term(const GeneralizedBasicCommutator& g, std::uint32_t coeff) {
    if (g.pi_power < 0) throw PreconditionError("negative pi-power");
    coeff %= field_.p();
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(g, coeff);
    if (inserted) return;
    it->second = field_.add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
}

MixedElement& MixedElement::operator+=(const MixedElement& other) {
    if (!(other.field_ == field_)) throw PreconditionError("adding mixed elements over different fields");
    for (const auto& [g, c] : other.terms_) add_term(g, c);
    return *this;
}

MixedElement MixedElement::scaled(std::uint32_t c) const {
    MixedElement r(field_);
    c %= field_.p();
    if (c == 0) return r;
    for (const auto& [g, a] : terms_) r.terms_.emplace(g, field_.mul(a, c));
    return r;
}

std::map<int, std::size_t> MixedElement::weights(const HallBasis& basis) const {
    std::map<int, std::size_t> out;
    for (const auto& [g, c] : terms_) ++out[g.weight(basis)];
    return out;
}

std::optional<int> MixedElement::homogeneous_weight(const HallBasis& basis) const {
    const auto w = weights(basis);
    if (w.size() != 1) return std::nullopt;
    return w.begin()->first;
}

MixedElement pi_apply(const MixedElement& a, int k) {
    if (k < 0) throw PreconditionError("pi_apply needs k >= 0");
    MixedElement r(a.field());
    for (const auto& [g, c] : a.terms()) r.add_term({g.pi_power + k, g.core}, c);
    return r;
}

// ---------------------------------------------------------------------------------------------
// MixedLieAlgebra

MixedLieAlgebra::MixedLieAlgebra(int d, int max_weight, std::uint32_t p, const fplie::Limits& limits)
    : lie_(d, max_weight, p, limits) {
    if (p == 2) throw PreconditionError("the mixed Lie model needs an odd prime");
}

MixedElement MixedLieAlgebra::element(const GeneralizedBasicCommutator& g, std::uint32_t coeff) const {
    if (g.core >= basis().size()) throw PreconditionError("core index out of range");
    MixedElement e(field());
    e.add_term(g, coeff);
    return e;
}

MixedElement MixedLieAlgebra::embed(const LieElement& a) const {
    MixedElement e(field());
    for (const auto& [i, c] : a.terms()) e.add_term({0, i}, c);
    return e;
}

MixedElement MixedLieAlgebra::bracket(const MixedElement& a, const MixedElement& b, int cutoff) const {
    MixedElement r(field());
    const HallBasis& hb = basis();
    for (const auto& [ga, ca] : a.terms()) {
        for (const auto& [gb, cb] : b.terms()) {
            if (ga.weight(hb) + gb.weight(hb) > cutoff) continue;
            if (hb.weight(ga.core) + hb.weight(gb.core) > max_weight())
                throw ResourceLimitError("mixed bracket needs cores beyond the algebra cutoff");
            const std::uint32_t scale = field().mul(ca, cb);
            for (const auto& [k, ck] : lie_.bracket_basis(ga.core, gb.core))
                r.add_term({ga.pi_power + gb.pi_power, k}, field().mul(ck, scale));
        }
    }
    return r;
}

std::size_t MixedLieAlgebra::degree_size(int n) const {
    std::size_t total = 0;
    for (int m = 1; m <= n; ++m) total += basis().count(m);
    return total;
}

FpVector MixedLieAlgebra::coordinates(const MixedElement& a, int n) const {
    FpVector v(degree_size(n), 0);
    for (const auto& [g, c] : a.terms()) {
        if (g.weight(basis()) != n) throw PreconditionError("mixed element is not homogeneous of the requested weight");
        std::size_t off = 0;
        for (int j = 0; j < g.pi_power; ++j) off += basis().count(n - j);
        v[off + (g.core - basis().offset(n - g.pi_power))] = c;
    }
    return v;
}

std::string MixedLieAlgebra::format(const GeneralizedBasicCommutator& g) const {
    std::string core = basis().to_string(g.core);
    if (g.pi_power == 0) return core;
    if (g.pi_power == 1) return "pi*" + core;
    return "pi^" + std::to_string(g.pi_power) + "*" + core;
}

std::string MixedLieAlgebra::format(const MixedElement& a) const {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [g, c] : a.terms()) {
        if (!out.empty()) out += " + ";
        out += std::to_string(c) + "*" + format(g);
    }
    return out;
}

GeneralizedBasicCommutator MixedLieAlgebra::parse_generalized(std::string_view text) const {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    GeneralizedBasicCommutator g;
    if (text.substr(0, 2) == "pi") {
        text.remove_prefix(2);
        g.pi_power = 1;
        if (!text.empty() && text.front() == '^') {
            text.remove_prefix(1);
            std::size_t k = 0;
            int value = 0;
            while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])) && value < 100000)
                value = value * 10 + (text[k++] - '0');
            if (k == 0) throw ParseError("malformed pi-power");
            g.pi_power = value;
            text.remove_prefix(k);
        }
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
        if (text.empty() || text.front() != '*') throw ParseError("expected '*' after the pi-power");
        text.remove_prefix(1);
    }
    g.core = basis().parse(text);
    return g;
}

// ---------------------------------------------------------------------------------------------
// MixedGradedSubspace

MixedGradedSubspace::MixedGradedSubspace(const HallBasis& basis, PrimeField field, int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1 || cutoff > basis.max_weight())
        throw PreconditionError("mixed subspace cutoff outside the Hall basis range");
    for (int m = 1; m <= cutoff; ++m)
        for (int j = 0; j <= cutoff - m; ++j) blocks_.emplace_back(field, basis.count(m));
}

std::size_t MixedGradedSubspace::slot(int core_weight, int pi_power) const {
    if (core_weight < 1 || pi_power < 0 || core_weight + pi_power > cutoff_)
        throw PreconditionError("block outside the mixed subspace cutoff");
    // Blocks of core weight m occupy cutoff - m + 1 consecutive slots.
    std::size_t base = 0;
    for (int m = 1; m < core_weight; ++m) base += static_cast<std::size_t>(cutoff_ - m + 1);
    return base + static_cast<std::size_t>(pi_power);
}

const EchelonBasis& MixedGradedSubspace::block(int core_weight, int pi_power) const {
    return blocks_[slot(core_weight, pi_power)];
}

EchelonBasis& MixedGradedSubspace::block(int core_weight, int pi_power) {
    return blocks_[slot(core_weight, pi_power)];
}

std::size_t MixedGradedSubspace::dim(int n) const {
    std::size_t total = 0;
    for (int j = 0; j < n; ++j) total += block(n - j, j).rank();
    return total;
}

std::vector<std::size_t> MixedGradedSubspace::dims() const {
    std::vector<std::size_t> out;
    for (int n = 1; n <= cutoff_; ++n) out.push_back(dim(n));
    return out;
}

bool MixedGradedSubspace::pi_stable() const {
    for (int m = 1; m <= cutoff_; ++m)
        for (int j = 0; m + j < cutoff_; ++j)
            for (const FpVector& row : block(m, j).rows())
                if (!block(m, j + 1).contains(row)) return false;
    return true;
}

bool MixedGradedSubspace::contains(const MixedLieAlgebra& algebra, const MixedElement& a) const {
    const HallBasis& hb = algebra.basis();
    std::map<std::pair<int, int>, FpVector> parts;
    for (const auto& [g, c] : a.terms()) {
        const int m = hb.weight(g.core);
        if (m + g.pi_power > cutoff_) return false;
        auto it = parts.try_emplace({m, g.pi_power}, FpVector(hb.count(m), 0)).first;
        it->second[g.core - hb.offset(m)] = c;
    }
    for (const auto& [key, v] : parts)
        if (!block(key.first, key.second).contains(v)) return false;
    return true;
}

std::vector<FpVector> MixedGradedSubspace::degree_rows(const MixedLieAlgebra& algebra, int n) const {
    const std::size_t len = algebra.degree_size(n);
    std::vector<FpVector> out;
    std::size_t off = 0;
    for (int j = 0; j < n; ++j) {
        const EchelonBasis& b = block(n - j, j);
        for (const FpVector& row : b.rows()) {
            FpVector v(len, 0);
            std::copy(row.begin(), row.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
            out.push_back(std::move(v));
        }
        off += b.length();
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// MixedClosureBuilder

MixedClosureBuilder::MixedClosureBuilder(const MixedLieAlgebra& algebra, int cutoff)
    : algebra_(&algebra), subspace_(algebra.basis(), algebra.field(), cutoff) {}

bool MixedClosureBuilder::insert_fresh(int core_weight, int pi_power, const FpVector& v) {
    EchelonBasis& b = subspace_.block(core_weight, pi_power);
    if (!b.insert(v)) return false;
    fresh_[{core_weight, pi_power}].push_back(v);
    return true;
}

bool MixedClosureBuilder::insert_generator(const Generator& g) {
    return insert_fresh(g.core_weight, g.pi_power, algebra_->lie().coordinates(g.core, g.core_weight));
}

void MixedClosureBuilder::advance() {
    const int n = degree_ + 1;
    if (n > cutoff()) throw PreconditionError("closure already complete up to its cutoff");
    const FreeLieAlgebra& lie = algebra_->lie();
    for (int j = 0; j < n; ++j) {
        const int m = n - j;
        EchelonBasis& target = subspace_.block(m, j);
        if (j > 0) target = subspace_.block(m, j - 1);
        // Brackets with the part of each source block not already a pi-shift: the shifted
        // part was bracketed one degree lower and reaches this block through pi.
        for (const Generator& g : active_) {
            if (g.pi_power > j || g.core_weight >= m) continue;
            const auto it = fresh_.find({m - g.core_weight, j - g.pi_power});
            if (it == fresh_.end()) continue;
            for (const FpVector& row : it->second) {
                if (target.full()) break;
                FpVector out(target.length(), 0);
                lie.accumulate_bracket(g.core, row, m - g.core_weight, out);
                insert_fresh(m, j, out);
            }
        }
    }
    degree_ = n;
    std::vector<Generator> later;
    for (Generator& g : pending_) {
        if (g.pi_power + g.core_weight == n) {
            insert_generator(g);
            active_.push_back(std::move(g));
        } else {
            later.push_back(std::move(g));
        }
    }
    pending_ = std::move(later);
}

bool MixedClosureBuilder::add_generator(int pi_power, const LieElement& core) {
    if (pi_power < 0) throw PreconditionError("negative pi-power");
    if (core.is_zero()) return false;
    const auto w = core.homogeneous_weight(algebra_->basis());
    if (!w) throw PreconditionError("generator core " + algebra_->lie().format(core) + " is not homogeneous");
    const int weight = *w + pi_power;
    if (weight > cutoff()) throw PreconditionError("generator is heavier than the closure cutoff");
    if (weight < degree_) throw PreconditionError("generator lighter than the degree already being closed");
    Generator g{pi_power, *w, core};
    if (weight > degree_) {
        pending_.push_back(std::move(g));
        return false;
    }
    const bool grew = insert_generator(g);
    active_.push_back(std::move(g));
    return grew;
}

bool MixedClosureBuilder::add_generator(const GeneralizedBasicCommutator& g) {
    return add_generator(g.pi_power, algebra_->lie().element(g.core));
}

MixedGradedSubspace mixed_closure(const MixedLieAlgebra& algebra,
                                  std::span<const GeneralizedBasicCommutator> generators, int cutoff) {
    MixedClosureBuilder builder(algebra, cutoff);
    for (const auto& g : generators) builder.add_generator(g);
    while (builder.completed_degree() < cutoff) builder.advance();
    return builder.subspace();
}

MixedGradedSubspace mixed_closure_of_lie(const MixedLieAlgebra& algebra, std::span<const LieElement> generators,
                                         int cutoff) {
    MixedClosureBuilder builder(algebra, cutoff);
    for (const auto& g : generators) builder.add_generator(0, g);
    while (builder.completed_degree() < cutoff) builder.advance();
    return builder.subspace();
}

std::vector<Rational> mixed_density_sequence(const MixedGradedSubspace& h, int cutoff) {
    if (cutoff < 1 || cutoff > h.cutoff()) throw PreconditionError("density cutoff beyond the subspace");
    std::vector<Rational> out;
    BigInt num = 0, den = 0;
    for (int n = 1; n <= cutoff; ++n) {
        num += static_cast<unsigned long>(h.dim(n));
        for (int j = 0; j < n; ++j) den += static_cast<unsigned long>(h.block(n - j, j).length());
        out.push_back(make_ratio(num, den));
    }
    return out;
}

std::vector<GeneralizedBasicCommutator> drop_redundant_generators(
    const MixedLieAlgebra& algebra, std::span<const GeneralizedBasicCommutator> generators, int cutoff) {
    std::vector<GeneralizedBasicCommutator> sorted(generators.begin(), generators.end());
    const HallBasis& hb = algebra.basis();
    std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        return a.weight(hb) < b.weight(hb);
    });
    MixedClosureBuilder builder(algebra, cutoff);
    std::vector<GeneralizedBasicCommutator> kept;
    std::size_t next = 0;
    while (builder.completed_degree() < cutoff) {
        builder.advance();
        const int n = builder.completed_degree();
        for (; next < sorted.size() && sorted[next].weight(hb) == n; ++next)
            if (builder.add_generator(sorted[next])) kept.push_back(sorted[next]);
    }
    if (next != sorted.size()) throw PreconditionError("generator is heavier than the closure cutoff");
    return kept;
}

// ---------------------------------------------------------------------------------------------
// Density-prescribed construction

bool DensityConstruction::condition_i_everywhere() const {
    return std::all_of(trace.begin(), trace.end(), [](const DensityTraceRow& r) { return r.condition_i; });
}

std::size_t DensityConstruction::condition_ii_stages() const {
    return static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [](const DensityTraceRow& r) { return r.condition_ii; }));
}

DensityConstruction construct_density_subalgebra(const MixedLieAlgebra& algebra, const Rational& alpha,
                                                 int cutoff) {
    if (alpha < 0 || alpha > 1) throw PreconditionError("alpha must lie in [0, 1]");
    if (cutoff < 2) throw PreconditionError("density construction needs a cutoff of at least 2");
    if (cutoff > algebra.max_weight()) throw PreconditionError("cutoff beyond the algebra's weight range");

    const HallBasis& hb = algebra.basis();
    const int d = hb.generators();
    DensityConstruction result;
    result.alpha = alpha;
    result.cutoff = cutoff;

    MixedClosureBuilder builder(algebra, cutoff);
    builder.advance();  // degree 1: nothing of Lambda^o lives there
    BigInt partial = 0;
    BigInt l_circ = 0;
    for (int n = 2; n <= cutoff; ++n) {
        builder.advance();
        l_circ += lambda_circ_dim(d, n);
        partial += static_cast<unsigned long>(builder.subspace().dim(n));

        DensityTraceRow row;
        row.n = n;
        row.l_circ = l_circ;
        const Rational beta = make_ratio(partial, l_circ);
        if (beta <= alpha) {
            // Greedy fill in (pi-power, core rank) order while the ratio stays <= alpha.
            for (int j = 0; j <= n - 2; ++j) {
                const int m = n - j;
                for (BasisIndex c = hb.offset(m); c < hb.offset(m + 1); ++c) {
                    if (make_ratio(partial + 1, l_circ) > alpha) break;
                    const GeneralizedBasicCommutator g{j, c};
                    if (builder.add_generator(g)) {
                        result.generators.push_back(g);
                        ++partial;
                        ++row.added;
                    }
                }
            }
        } else {
            row.stalled = true;
        }
        row.partial_dim = partial;
        row.ratio = make_ratio(partial, l_circ);
        row.lower_bound = alpha - make_ratio(1, l_circ);
        row.condition_i = row.lower_bound <= row.ratio;
        row.condition_ii = row.ratio <= alpha;
        result.trace.push_back(std::move(row));
    }
    result.dims = builder.subspace().dims();
    // Each generator was taken only when it enlarged H, so this pass keeps all of them; it
    // stays as a check that the returned set is minimal.
    const auto kept = drop_redundant_generators(algebra, result.generators, cutoff);
    if (kept.size() != result.generators.size())
        throw std::logic_error("density construction produced a redundant generator");
    return result;
}

DensityConstruction construct_density_subalgebra(const Rational& alpha, int d, std::uint32_t p, int cutoff) {
    const MixedLieAlgebra algebra(d, cutoff, p);
    return construct_density_subalgebra(algebra, alpha, cutoff);
}

}  // namespace hspec::mixedlie
