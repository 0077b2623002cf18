#include "hspec/lattice.hpp"

#include "hspec/errors.hpp"

#include <algorithm>

namespace hspec::lattice {

namespace {

Rational power_of(std::uint64_t p, std::int64_t k) { return Rational(pow_big(p, static_cast<std::uint64_t>(k))); }

void axpy(RationalVector& y, const Rational& a, const RationalVector& x) {
    for (std::size_t k = 0; k < y.size(); ++k)
        if (sgn(x[k]) != 0) y[k] -= a * x[k];
}

}  // namespace

PadicLattice::PadicLattice(std::uint64_t p, const RationalMatrix& generators) : p_(p) {
    if (!is_prime(p)) throw PreconditionError("lattice prime " + std::to_string(p) + " is not prime");
    if (generators.empty()) throw PreconditionError("lattice needs generators");
    const std::size_t d = generators.front().size();
    if (d == 0) throw PreconditionError("lattice rank must be positive");
    RationalMatrix rows;
    for (const auto& g : generators) {
        if (g.size() != d) throw PreconditionError("generator rows have different lengths");
        for (const auto& x : g)
            if (!is_p_integral(x, p)) throw PreconditionError("lattice generators must be p-integral");
        if (std::any_of(g.begin(), g.end(), [](const Rational& x) { return sgn(x) != 0; })) rows.push_back(g);
    }
    for (auto& r : rows)
        for (auto& x : r) x.canonicalize();

    // Echelon form over Z_(p): the pivot is the entry of least valuation in its column.
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t best = rows.size();
        std::int64_t best_val = kInfiniteValuation;
        for (std::size_t r = col; r < rows.size(); ++r) {
            const std::int64_t v = valuation(rows[r][col], p);
            if (v < best_val) {
                best_val = v;
                best = r;
            }
        }
        if (best == rows.size()) throw PreconditionError("lattice generators do not have full rank");
        std::swap(rows[col], rows[best]);
        const Rational unit = rows[col][col] / power_of(p, best_val);
        for (auto& x : rows[col]) x /= unit;
        for (std::size_t r = col + 1; r < rows.size(); ++r) {
            if (sgn(rows[r][col]) == 0) continue;
            const Rational f = rows[r][col] / rows[col][col];
            axpy(rows[r], f, rows[col]);
        }
        exponents_.push_back(best_val);
    }
    rows.resize(d);
    // Reduce entries above each pivot into [0, p^{a_j}).
    for (std::size_t j = 0; j < d; ++j) {
        const BigInt modulus = pow_big(p, static_cast<std::uint64_t>(exponents_[j]));
        for (std::size_t i = 0; i < j; ++i) {
            const Rational& x = rows[i][j];
            const Rational q = (x - Rational(residue(x, modulus))) / Rational(modulus);
            if (sgn(q) != 0) axpy(rows[i], q, rows[j]);
        }
    }
    basis_ = std::move(rows);
}

PadicLattice PadicLattice::standard(std::uint64_t p, std::size_t d) {
    return diagonal(p, std::vector<std::uint64_t>(d, 0));
}

PadicLattice PadicLattice::diagonal(std::uint64_t p, const std::vector<std::uint64_t>& exponents) {
    RationalMatrix m(exponents.size(), RationalVector(exponents.size(), Rational(0)));
    for (std::size_t i = 0; i < exponents.size(); ++i) m[i][i] = Rational(pow_big(p, exponents[i]));
    return PadicLattice(p, m);
}

std::int64_t PadicLattice::colength() const {
    std::int64_t s = 0;
    for (auto a : exponents_) s += a;
    return s;
}

RationalVector PadicLattice::coordinates(const RationalVector& v) const {
    if (v.size() != rank()) throw PreconditionError("vector length differs from the lattice rank");
    RationalVector rest = v;
    RationalVector x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        x[i] = rest[i] / basis_[i][i];
        if (sgn(x[i]) != 0) axpy(rest, x[i], basis_[i]);
    }
    return x;
}

bool PadicLattice::contains(const RationalVector& v) const {
    const RationalVector x = coordinates(v);
    return std::all_of(x.begin(), x.end(), [&](const Rational& c) { return is_p_integral(c, p_); });
}

bool PadicLattice::contains(const PadicLattice& m) const {
    if (m.p_ != p_ || m.rank() != rank()) throw PreconditionError("comparing lattices of different ambients");
    return std::all_of(m.basis_.begin(), m.basis_.end(), [&](const RationalVector& r) { return contains(r); });
}

PadicLattice PadicLattice::scaled(std::uint64_t k) const {
    const Rational f(pow_big(p_, k));
    RationalMatrix m = basis_;
    for (auto& r : m)
        for (auto& x : r) x *= f;
    return PadicLattice(p_, m);
}

PadicLattice PadicLattice::operator+(const PadicLattice& other) const {
    if (other.p_ != p_ || other.rank() != rank()) throw PreconditionError("adding lattices of different ambients");
    return plus(other.basis_);
}

PadicLattice PadicLattice::plus(const RationalMatrix& vectors) const {
    RationalMatrix m = basis_;
    m.insert(m.end(), vectors.begin(), vectors.end());
    return PadicLattice(p_, m);
}

// ---------------------------------------------------------------------------------------------

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.empty() || a.front().size() != b.size()) throw PreconditionError("matrix size mismatch");
    RationalMatrix c(a.size(), RationalVector(b.front().size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

RationalVector vecmul(const RationalVector& v, const RationalMatrix& m) {
    return matmul(RationalMatrix{v}, m).front();
}

RationalMatrix inverse(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw PreconditionError("inverse of a non-square matrix");
        inv[i][i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(a[piv][col]) == 0) ++piv;
        if (piv == n) throw PreconditionError("singular matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const Rational s = a[col][col];
        for (std::size_t k = 0; k < n; ++k) {
            a[col][k] /= s;
            inv[col][k] /= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(a[r][col]) == 0) continue;
            const Rational f = a[r][col];
            axpy(a[r], f, a[col]);
            axpy(inv[r], f, inv[col]);
        }
    }
    return inv;
}

GroupAction::GroupAction(std::uint64_t p, std::vector<RationalMatrix> generators)
    : p_(p), d_(0), generators_(std::move(generators)) {
    if (!is_prime(p)) throw PreconditionError("action prime " + std::to_string(p) + " is not prime");
    if (generators_.empty()) throw PreconditionError("group action needs at least one generator");
    d_ = generators_.front().size();
    for (const auto& g : generators_) {
        if (g.size() != d_) throw PreconditionError("generator matrices differ in size");
        RationalMatrix shifted = g;
        for (std::size_t i = 0; i < d_; ++i) {
            if (g[i].size() != d_) throw PreconditionError("generator matrix is not square");
            for (const auto& x : g[i])
                if (!is_p_integral(x, p)) throw PreconditionError("generator entries must be p-integral");
            shifted[i][i] -= 1;
        }
        RationalMatrix power = shifted;
        for (std::size_t k = 1; k < d_; ++k) power = matmul(power, shifted);
        for (const auto& row : power)
            for (const auto& x : row)
                if (sgn(x) != 0 && valuation(x, p) < 1)
                    throw PreconditionError("generator does not act unipotently modulo p");
        const RationalMatrix inv = inverse(g);
        for (const auto& row : inv)
            for (const auto& x : row)
                if (!is_p_integral(x, p)) throw PreconditionError("generator is not invertible over Z_p");
    }
}

GroupAction GroupAction::trivial(std::uint64_t p, std::size_t d) {
    RationalMatrix id(d, RationalVector(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
    return GroupAction(p, {id});
}

bool GroupAction::preserves(const PadicLattice& m) const {
    if (m.p() != p_ || m.rank() != d_) throw PreconditionError("lattice and action have different ambients");
    for (const auto& g : generators_)
        for (const auto& row : m.basis())
            if (!m.contains(vecmul(row, g))) return false;
    return true;
}

PadicLattice lambda_step(const PadicLattice& m, const GroupAction& action) {
    if (!action.preserves(m)) throw PreconditionError("lattice is not invariant under the action");
    RationalMatrix gens;
    const Rational p(static_cast<unsigned long>(m.p()));
    for (const auto& row : m.basis()) {
        RationalVector r = row;
        for (auto& x : r) x *= p;
        gens.push_back(std::move(r));
    }
    for (const auto& g : action.generators()) {
        RationalMatrix shifted = g;
        for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i][i] -= 1;
        for (const auto& row : m.basis()) gens.push_back(vecmul(row, shifted));
    }
    return PadicLattice(m.p(), gens);
}

std::vector<PadicLattice> lambda_series(const PadicLattice& l, const GroupAction& action, std::size_t count) {
    std::vector<PadicLattice> out{l};
    for (std::size_t i = 0; i < count; ++i) out.push_back(lambda_step(out.back(), action));
    return out;
}

std::int64_t log_index(const PadicLattice& l, const PadicLattice& m) {
    if (!l.contains(m)) throw PreconditionError("log_index needs M contained in L");
    return m.colength() - l.colength();
}

std::pair<std::int64_t, std::int64_t> ell_u(const PadicLattice& l, const PadicLattice& m) {
    if (!l.contains(m)) throw PreconditionError("ell_u needs M contained in L");
    RationalMatrix b;
    for (const auto& row : m.basis()) b.push_back(l.coordinates(row));
    std::int64_t u = kInfiniteValuation;
    for (const auto& row : b)
        for (const auto& x : row) u = std::min(u, valuation(x, l.p()));
    std::int64_t ell = 0;
    for (const auto& row : inverse(b))
        for (const auto& x : row)
            if (sgn(x) != 0) ell = std::max(ell, -valuation(x, l.p()));
    return {ell, u};
}

std::vector<bool> check_c_equivalence(const std::vector<PadicLattice>& s, const std::vector<PadicLattice>& s_star,
                                      std::uint64_t c) {
    if (s.size() != s_star.size()) throw PreconditionError("filtration windows differ in length");
    std::vector<bool> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i].p() != s_star[i].p() || s[i].rank() != s_star[i].rank())
            throw PreconditionError("filtrations live in different ambients");
        out.push_back(s_star[i].contains(s[i].scaled(c)) && s[i].contains(s_star[i].scaled(c)));
    }
    return out;
}

hdim::LogIndexSequence hdim_sublattice(const RationalMatrix& h_generators, const std::vector<PadicLattice>& series,
                                       std::size_t window) {
    if (series.size() <= window) throw PreconditionError("filtration shorter than the window");
    const PadicLattice& l0 = series.front();
    for (const auto& v : h_generators)
        if (!l0.contains(v)) throw PreconditionError("subgroup is not contained in L_0");
    hdim::LogIndexSequence seq;
    for (std::size_t i = 1; i <= window; ++i) {
        const std::int64_t den = log_index(l0, series[i]);
        const std::int64_t num = h_generators.empty() ? 0 : den - log_index(l0, series[i].plus(h_generators));
        seq.add(static_cast<std::int64_t>(i), BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    }
    return seq;
}

}  // namespace hspec::lattice
