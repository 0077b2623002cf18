#include "hspec/fplie.hpp"

#include "hspec/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace hspec::fplie {

namespace {

std::uint64_t pair_key(BasisIndex u, BasisIndex v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Splits "[u,v]" into u and v at the top-level comma.
std::pair<std::string_view, std::string_view> split_bracket(std::string_view s) {
    s = trim(s);
    if (s.size() < 5 || s.front() != '[' || s.back() != ']')
        throw ParseError("malformed bracket '" + std::string(s) + "'");
    const std::string_view inner = s.substr(1, s.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '[') ++depth;
        else if (inner[i] == ']') --depth;
        else if (inner[i] == ',' && depth == 0)
            return {trim(inner.substr(0, i)), trim(inner.substr(i + 1))};
        if (depth < 0) break;
    }
    throw ParseError("malformed bracket '" + std::string(s) + "'");
}

int parse_generator(std::string_view s, int d) {
    s = trim(s);
    if (s.size() < 2 || s[0] != 'x') throw ParseError("malformed generator '" + std::string(s) + "'");
    int value = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("malformed generator '" + std::string(s) + "'");
        value = value * 10 + (s[i] - '0');
        if (value > 1'000'000) break;
    }
    if (value < 1 || value > d)
        throw ParseError("generator '" + std::string(s) + "' outside x1..x" + std::to_string(d));
    return value;
}

}  // namespace

Limits Limits::from_environment() {
    Limits limits;
    if (const char* v = std::getenv("HSPEC_MAX_BASIS")) limits.max_basis_size = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("HSPEC_MAX_WEIGHT")) limits.max_weight = std::atoi(v);
    return limits;
}

int moebius(int n) {
    if (n < 1) throw PreconditionError("moebius of non-positive integer");
    int result = 1;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

BigInt witt_dimension(int d, int n) {
    if (d < 1 || n < 1) throw PreconditionError("witt_dimension needs d >= 1 and n >= 1");
    BigInt sum = 0;
    for (int m = 1; m <= n; ++m) {
        if (n % m) continue;
        const int mu = moebius(m);
        if (mu == 0) continue;
        const BigInt term = pow_big(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n / m));
        sum += mu > 0 ? term : BigInt(-term);
    }
    return sum / n;
}

// ---------------------------------------------------------------------------------------------
// HallBasis

HallBasis::HallBasis(int d, int max_weight, const Limits& limits) : d_(d), max_weight_(max_weight) {
    if (d < 1) throw PreconditionError("Hall basis needs at least one generator");
    if (max_weight < 1) throw PreconditionError("Hall basis cutoff must be >= 1");
    if (max_weight > limits.max_weight)
        throw ResourceLimitError("weight cutoff " + std::to_string(max_weight) + " exceeds cap " +
                                 std::to_string(limits.max_weight));

    offsets_.assign(static_cast<std::size_t>(max_weight) + 2, 0);
    offsets_[1] = 0;
    for (int i = 1; i <= d; ++i) elements_.push_back({i, 0, 0, 1});
    if (elements_.size() > limits.max_basis_size)
        throw ResourceLimitError("Hall basis size exceeds cap");
    offsets_[2] = static_cast<BasisIndex>(elements_.size());

    for (int n = 2; n <= max_weight; ++n) {
        std::vector<std::pair<BasisIndex, BasisIndex>> fresh;
        for (int wv = 1; 2 * wv <= n; ++wv) {
            const int wu = n - wv;
            for (BasisIndex u = offsets_[wu]; u < offsets_[wu + 1]; ++u) {
                const BasicCommutator& cu = elements_[u];
                BasisIndex v_begin = offsets_[wv];
                if (!cu.is_generator()) v_begin = std::max(v_begin, cu.right);
                const BasisIndex v_end = std::min<BasisIndex>(offsets_[wv + 1], u);
                for (BasisIndex v = v_begin; v < v_end; ++v) fresh.emplace_back(u, v);
            }
        }
        std::sort(fresh.begin(), fresh.end());
        if (elements_.size() + fresh.size() > limits.max_basis_size)
            throw ResourceLimitError("Hall basis size exceeds cap of " + std::to_string(limits.max_basis_size) +
                                     " elements at weight " + std::to_string(n));
        for (const auto& [u, v] : fresh) {
            pair_index_.emplace(pair_key(u, v), static_cast<BasisIndex>(elements_.size()));
            elements_.push_back({0, u, v, n});
        }
        offsets_[static_cast<std::size_t>(n) + 1] = static_cast<BasisIndex>(elements_.size());
    }
}

BasisIndex HallBasis::offset(int n) const {
    if (n < 1 || n > max_weight_ + 1) throw PreconditionError("weight outside Hall basis cutoff");
    return offsets_[static_cast<std::size_t>(n)];
}

std::size_t HallBasis::count(int n) const {
    if (n < 1 || n > max_weight_) throw PreconditionError("weight outside Hall basis cutoff");
    return offsets_[static_cast<std::size_t>(n) + 1] - offsets_[static_cast<std::size_t>(n)];
}

std::span<const BasicCommutator> HallBasis::weight_slice(int n) const {
    return std::span<const BasicCommutator>(elements_).subspan(offset(n), count(n));
}

BasisIndex HallBasis::generator(int i) const {
    if (i < 1 || i > d_) throw PreconditionError("generator index out of range");
    return static_cast<BasisIndex>(i - 1);
}

std::optional<BasisIndex> HallBasis::find(BasisIndex u, BasisIndex v) const {
    const auto it = pair_index_.find(pair_key(u, v));
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
}

bool HallBasis::is_basic_pair(BasisIndex u, BasisIndex v) const {
    if (u <= v) return false;
    const BasicCommutator& cu = elements_.at(u);
    return cu.is_generator() || v >= cu.right;
}

std::string HallBasis::to_string(BasisIndex i) const {
    const BasicCommutator& c = elements_.at(i);
    if (c.is_generator()) return "x" + std::to_string(c.generator);
    return "[" + to_string(c.left) + "," + to_string(c.right) + "]";
}

BasisIndex HallBasis::parse(std::string_view text) const {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        const auto [l, r] = split_bracket(text);
        const BasisIndex u = parse(l);
        const BasisIndex v = parse(r);
        if (elements_[u].weight + elements_[v].weight > max_weight_)
            throw PreconditionError("commutator '" + std::string(text) + "' exceeds the weight cutoff");
        const auto idx = find(u, v);
        if (!idx) throw ParseError("'" + std::string(text) + "' is not a basic commutator");
        return *idx;
    }
    return generator(parse_generator(text, d_));
}

// ---------------------------------------------------------------------------------------------
// LieElement

LieElement LieElement::basis_element(PrimeField field, BasisIndex i, std::uint32_t coeff) {
    LieElement e(field);
    e.add_term(i, coeff);
    return e;
}

void LieElement::add_term(BasisIndex i, std::uint32_t coeff) {
    coeff %= field_.p();
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(i, coeff);
    if (inserted) return;
    it->second = field_.add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
}

LieElement& LieElement::operator+=(const LieElement& other) {
    if (!(other.field_ == field_)) throw PreconditionError("adding Lie elements over different fields");
    for (const auto& [i, c] : other.terms_) add_term(i, c);
    return *this;
}

LieElement& LieElement::operator-=(const LieElement& other) {
    if (!(other.field_ == field_)) throw PreconditionError("subtracting Lie elements over different fields");
    for (const auto& [i, c] : other.terms_) add_term(i, field_.neg(c));
    return *this;
}

LieElement LieElement::scaled(std::uint32_t c) const {
    LieElement r(field_);
    c %= field_.p();
    if (c == 0) return r;
    for (const auto& [i, a] : terms_) r.terms_.emplace(i, field_.mul(a, c));
    return r;
}

std::map<int, std::size_t> LieElement::weights(const HallBasis& basis) const {
    std::map<int, std::size_t> result;
    for (const auto& [i, c] : terms_) ++result[basis.weight(i)];
    return result;
}

std::optional<int> LieElement::homogeneous_weight(const HallBasis& basis) const {
    const auto w = weights(basis);
    if (w.size() != 1) return std::nullopt;
    return w.begin()->first;
}

// ---------------------------------------------------------------------------------------------
// FreeLieAlgebra

FreeLieAlgebra::FreeLieAlgebra(int d, int max_weight, std::uint32_t p, const Limits& limits)
    : basis_(d, max_weight, limits), field_(p) {}

LieElement FreeLieAlgebra::generator(int i) const {
    return LieElement::basis_element(field_, basis_.generator(i));
}

LieElement FreeLieAlgebra::element(BasisIndex i, std::uint32_t coeff) const {
    if (i >= basis_.size()) throw PreconditionError("basis index out of range");
    return LieElement::basis_element(field_, i, coeff);
}

const SparseVector& FreeLieAlgebra::bracket_basis(BasisIndex a, BasisIndex b) const {
    if (basis_.weight(a) + basis_.weight(b) > basis_.max_weight())
        throw PreconditionError("bracket of basis elements exceeds the algebra cutoff");
    std::lock_guard lock(cache_mutex_);
    const auto key = pair_key(a, b);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    SparseVector value = compute_bracket(a, b);
    return cache_.emplace(key, std::move(value)).first->second;
}

SparseVector FreeLieAlgebra::compute_bracket(BasisIndex a, BasisIndex b) const {
    if (a == b) return {};
    if (a < b) {
        SparseVector r = bracket_basis(b, a);
        for (auto& [i, c] : r) c = field_.neg(c);
        return r;
    }
    const BasicCommutator& ca = basis_[a];
    if (ca.is_generator() || b >= ca.right) {
        const auto idx = basis_.find(a, b);
        if (!idx) throw std::logic_error("basic pair missing from Hall basis");
        return {{*idx, 1}};
    }
    // a = [y,z] with b < z: [[y,z],b] = [[y,b],z] + [y,[z,b]].
    const BasisIndex y = ca.left;
    const BasisIndex z = ca.right;
    std::map<BasisIndex, std::uint32_t> acc;
    auto accumulate = [&](const SparseVector& terms, std::uint32_t scale) {
        for (const auto& [i, c] : terms) {
            auto& slot = acc[i];
            slot = field_.add(slot, field_.mul(c, scale));
        }
    };
    const SparseVector yb = bracket_basis(y, b);
    for (const auto& [c, k] : yb) accumulate(bracket_basis(c, z), k);
    const SparseVector zb = bracket_basis(z, b);
    for (const auto& [c, k] : zb) accumulate(bracket_basis(y, c), k);
    SparseVector result;
    for (const auto& [i, c] : acc)
        if (c) result.emplace_back(i, c);
    return result;
}

LieElement FreeLieAlgebra::bracket(const LieElement& a, const LieElement& b, int cutoff) const {
    if (!(a.field() == field_) || !(b.field() == field_))
        throw PreconditionError("bracket operands over a different field");
    cutoff = std::min(cutoff, basis_.max_weight());
    LieElement result(field_);
    for (const auto& [i, ci] : a.terms()) {
        for (const auto& [j, cj] : b.terms()) {
            if (basis_.weight(i) + basis_.weight(j) > cutoff) continue;
            const std::uint32_t scale = field_.mul(ci, cj);
            for (const auto& [k, ck] : bracket_basis(i, j)) result.add_term(k, field_.mul(ck, scale));
        }
    }
    return result;
}

void FreeLieAlgebra::accumulate_bracket(const LieElement& g, const FpVector& row, int row_weight,
                                        FpVector& out) const {
    const BasisIndex row_offset = basis_.offset(row_weight);
    for (const auto& [gi, gc] : g.terms()) {
        const int target = basis_.weight(gi) + row_weight;
        if (target > basis_.max_weight()) continue;
        const BasisIndex out_offset = basis_.offset(target);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] == 0) continue;
            const std::uint32_t scale = field_.mul(gc, row[k]);
            for (const auto& [idx, c] : bracket_basis(gi, row_offset + static_cast<BasisIndex>(k))) {
                auto& slot = out[idx - out_offset];
                slot = field_.add(slot, field_.mul(c, scale));
            }
        }
    }
}

FpVector FreeLieAlgebra::coordinates(const LieElement& a, int n) const {
    FpVector v(basis_.count(n), 0);
    const BasisIndex off = basis_.offset(n);
    for (const auto& [i, c] : a.terms()) {
        if (basis_.weight(i) != n) throw PreconditionError("element is not homogeneous of the requested weight");
        v[i - off] = c;
    }
    return v;
}

LieElement FreeLieAlgebra::from_coordinates(const FpVector& v, int n) const {
    LieElement e(field_);
    const BasisIndex off = basis_.offset(n);
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k]) e.add_term(off + static_cast<BasisIndex>(k), v[k]);
    return e;
}

std::string FreeLieAlgebra::format(const LieElement& a) const {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [i, c] : a.terms()) {
        if (!out.empty()) out += " + ";
        out += std::to_string(c) + "*" + basis_.to_string(i);
    }
    return out;
}

LieElement FreeLieAlgebra::parse_tree(std::string_view text) const {
    text = trim(text);
    if (!text.empty() && text.front() == '[') {
        const auto [l, r] = split_bracket(text);
        return bracket(parse_tree(l), parse_tree(r));
    }
    return generator(parse_generator(text, basis_.generators()));
}

LieElement FreeLieAlgebra::parse_element(std::string_view text) const {
    LieElement result(field_);
    text = trim(text);
    if (text == "0") return result;
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '[') ++depth;
        else if (text[i] == ']') --depth;
        else if (text[i] == '+' && depth == 0) {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(text.substr(start));
    for (std::string_view part : parts) {
        part = trim(part);
        if (part.empty()) throw ParseError("empty term in Lie element '" + std::string(text) + "'");
        std::int64_t coeff = 1;
        if (part.front() == '-') {
            coeff = -1;
            part = trim(part.substr(1));
        }
        if (const auto star = part.find('*'); star != std::string_view::npos) {
            const std::string num(trim(part.substr(0, star)));
            if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                throw ParseError("malformed coefficient '" + num + "'");
            coeff *= std::stoll(num);
            part = trim(part.substr(star + 1));
        }
        result += parse_tree(part).scaled(field_.from_int(coeff));
    }
    return result;
}

// ---------------------------------------------------------------------------------------------
// Graded subspaces

GradedSubspace::GradedSubspace(const HallBasis& basis, PrimeField field, int cutoff) : cutoff_(cutoff) {
    if (cutoff < 1 || cutoff > basis.max_weight())
        throw PreconditionError("graded subspace cutoff outside the Hall basis range");
    degrees_.reserve(static_cast<std::size_t>(cutoff));
    for (int n = 1; n <= cutoff; ++n) degrees_.emplace_back(field, basis.count(n));
}

std::vector<std::size_t> GradedSubspace::dims() const {
    std::vector<std::size_t> out;
    for (const auto& d : degrees_) out.push_back(d.rank());
    return out;
}

bool GradedSubspace::contains(const FreeLieAlgebra& algebra, const LieElement& a) const {
    std::map<int, LieElement> parts;
    for (const auto& [i, c] : a.terms()) {
        const int w = algebra.basis().weight(i);
        if (w > cutoff_) return false;
        parts.try_emplace(w, algebra.field()).first->second.add_term(i, c);
    }
    for (const auto& [w, part] : parts)
        if (!degree(w).contains(algebra.coordinates(part, w))) return false;
    return true;
}

GradedSubspace full_subspace(const FreeLieAlgebra& algebra, int cutoff) {
    GradedSubspace m(algebra.basis(), algebra.field(), cutoff);
    for (int n = 1; n <= cutoff; ++n) {
        const std::size_t len = algebra.basis().count(n);
        for (std::size_t k = 0; k < len; ++k) {
            FpVector e(len, 0);
            e[k] = 1;
            m.degree(n).insert(e);
        }
    }
    return m;
}

GradedSubspace subalgebra_closure(const FreeLieAlgebra& algebra, std::span<const LieElement> generators,
                                  int cutoff) {
    if (cutoff < 1 || cutoff > algebra.max_weight())
        throw PreconditionError("closure cutoff outside the algebra's weight range");
    std::vector<std::pair<int, const LieElement*>> gens;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        const auto w = g.homogeneous_weight(algebra.basis());
        if (!w) throw PreconditionError("generator " + algebra.format(g) + " is not homogeneous");
        if (*w > cutoff)
            throw PreconditionError("generator " + algebra.format(g) + " is heavier than the cutoff");
        gens.emplace_back(*w, &g);
    }

    GradedSubspace m(algebra.basis(), algebra.field(), cutoff);
    for (int n = 1; n <= cutoff; ++n) {
        EchelonBasis& target = m.degree(n);
        for (const auto& [w, g] : gens)
            if (w == n) target.insert(algebra.coordinates(*g, n));
        // M_n = Y_n + sum_g [g, M_{n - wt g}]: right-normed brackets span the subalgebra.
        for (const auto& [w, g] : gens) {
            if (w >= n) continue;
            for (const FpVector& row : m.degree(n - w).rows()) {
                if (target.full()) break;
                FpVector out(target.length(), 0);
                algebra.accumulate_bracket(*g, row, n - w, out);
                target.insert(out);
            }
        }
    }
    return m;
}

std::vector<Rational> density_sequence(const GradedSubspace& m, int cutoff) {
    if (cutoff < 1 || cutoff > m.cutoff()) throw PreconditionError("density cutoff beyond the subspace");
    std::vector<Rational> out;
    BigInt num = 0, den = 0;
    for (int n = 1; n <= cutoff; ++n) {
        num += static_cast<unsigned long>(m.dim(n));
        den += static_cast<unsigned long>(m.degree(n).length());
        Rational r(num, den);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

}  // namespace hspec::fplie
