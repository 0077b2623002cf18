#pragma once

// Magnus embedding x_i -> 1 + X_i into power series in noncommuting X_1..X_d, truncated at a
// degree T. Over Z two words agree modulo the (T+1)-th lower central term iff their truncated
// series agree; over Z/p an element of the (T+1)-th lower p-series term maps to 1 + (degree > T).

#include "hspec/collect.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

class Series {
public:
    /// modulus 0 means integer coefficients.
    Series(int d, int degree, std::int64_t modulus = 0) : d_(d), t_(degree), mod_(modulus) {
        std::size_t size = 0;
        std::int64_t block = 1;
        for (int len = 0; len <= t_; ++len) {
            offset_.push_back(size);
            pow_.push_back(block);
            size += static_cast<std::size_t>(block);
            block *= d_;
        }
        offset_.push_back(size);
        c_.assign(size, 0);
        c_[0] = 1;
    }

    static Series generator(int d, int degree, std::int64_t modulus, int i) {
        Series s(d, degree, modulus);
        if (degree >= 1) s.c_[s.offset_[1] + static_cast<std::size_t>(i)] = s.reduce(1);
        return s;
    }

    int degree() const { return t_; }
    bool operator==(const Series& o) const { return c_ == o.c_; }

    /// Coefficients of the words of length `len`, indexed by base-d code.
    std::vector<std::int64_t> homogeneous(int len) const {
        return {c_.begin() + static_cast<std::ptrdiff_t>(offset_[static_cast<std::size_t>(len)]),
                c_.begin() + static_cast<std::ptrdiff_t>(offset_[static_cast<std::size_t>(len) + 1])};
    }

    friend Series operator*(const Series& a, const Series& b) {
        Series out(a.d_, a.t_, a.mod_);
        out.c_[0] = 0;
        for (int la = 0; la <= a.t_; ++la)
            for (std::int64_t ca = 0; ca < a.pow_[static_cast<std::size_t>(la)]; ++ca) {
                const std::int64_t x = a.c_[a.offset_[static_cast<std::size_t>(la)] + static_cast<std::size_t>(ca)];
                if (x == 0) continue;
                for (int lb = 0; la + lb <= a.t_; ++lb) {
                    const std::int64_t shift = a.pow_[static_cast<std::size_t>(lb)];
                    const std::size_t base = out.offset_[static_cast<std::size_t>(la + lb)] +
                                             static_cast<std::size_t>(ca * shift);
                    for (std::int64_t cb = 0; cb < shift; ++cb) {
                        const std::int64_t y = b.c_[b.offset_[static_cast<std::size_t>(lb)] + static_cast<std::size_t>(cb)];
                        if (y == 0) continue;
                        auto& z = out.c_[base + static_cast<std::size_t>(cb)];
                        z = out.reduce(checked_add(z, checked_mul(x, y)));
                    }
                }
            }
        return out;
    }

    /// (1 + A)^N for the series 1 + A, any integer N.
    Series power(const mpz_class& n) const {
        if (n < 0) return inverse().power(-n);
        Series a = *this;
        a.c_[0] = 0;  // A
        Series out(d_, t_, mod_);
        Series ak = out;  // A^k
        mpz_class binom = 1;
        for (int k = 1; k <= t_; ++k) {
            ak = ak * a;
            binom = binom * (n - (k - 1)) / k;
            if (binom == 0) break;
            mpz_class b = binom;
            if (mod_) b %= mod_;
            if (!b.fits_slong_p()) throw std::overflow_error("binomial coefficient too large");
            const std::int64_t bv = b.get_si();
            for (std::size_t i = 0; i < c_.size(); ++i)
                if (ak.c_[i]) out.c_[i] = reduce(checked_add(out.c_[i], checked_mul(bv, ak.c_[i])));
        }
        return out;
    }

    Series inverse() const {
        Series a = *this;
        a.c_[0] = 0;
        Series out(d_, t_, mod_);
        Series ak = out;
        for (int k = 1; k <= t_; ++k) {
            ak = ak * a;
            for (std::size_t i = 0; i < c_.size(); ++i)
                if (ak.c_[i]) out.c_[i] = reduce(k % 2 ? out.c_[i] - ak.c_[i] : out.c_[i] + ak.c_[i]);
        }
        return out;
    }

    friend Series commutator(const Series& u, const Series& v) { return u.inverse() * v.inverse() * u * v; }

private:
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
        return r;
    }
    std::int64_t reduce(std::int64_t x) const {
        if (!mod_) return x;
        x %= mod_;
        return x < 0 ? x + mod_ : x;
    }

    int d_;
    int t_;
    std::int64_t mod_;
    std::vector<std::size_t> offset_;
    std::vector<std::int64_t> pow_;
    std::vector<std::int64_t> c_;
};

/// Series of basic commutators read as group commutators, memoized.
class MagnusModel {
public:
    MagnusModel(const hspec::fplie::HallBasis& basis, int degree, std::int64_t modulus = 0)
        : basis_(basis), t_(degree), mod_(modulus) {}

    const hspec::fplie::HallBasis& basis() const { return basis_; }
    int degree() const { return t_; }
    Series one() const { return Series(basis_.generators(), t_, mod_); }

    const Series& core(hspec::fplie::BasisIndex i) {
        auto it = memo_.find(i);
        if (it != memo_.end()) return it->second;
        const auto& c = basis_[i];
        Series s = c.is_generator() ? Series::generator(basis_.generators(), t_, mod_, c.generator - 1)
                                    : commutator(core(c.left), core(c.right));
        return memo_.emplace(i, std::move(s)).first->second;
    }

    Series element(const hspec::collect::GenBasicGroupCommutator& g, std::uint32_t p) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(g.exponent_log));
        return core(g.core).power(e);
    }

    Series word(const hspec::collect::GroupWord& w) {
        Series out = one();
        for (const auto& f : w.factors()) out = out * element(f.element, w.p()).power(f.exponent);
        return out;
    }

    Series normal_form(const hspec::collect::NormalForm& nf) {
        std::map<int, Series> nodes;
        std::function<const Series&(int)> eval = [&](int k) -> const Series& {
            auto it = nodes.find(k);
            if (it != nodes.end()) return it->second;
            const auto& n = nf.nodes.at(static_cast<std::size_t>(k));
            Series s = n.is_letter() ? element(nf.letters.at(static_cast<std::size_t>(n.letter)), nf.p)
                                     : commutator(eval(n.left), eval(n.right));
            return nodes.emplace(k, std::move(s)).first->second;
        };
        Series out = one();
        for (const auto& e : nf.entries) out = out * eval(e.node).power(e.exponent);
        return out;
    }

private:
    const hspec::fplie::HallBasis& basis_;
    int t_;
    std::int64_t mod_;
    std::map<hspec::fplie::BasisIndex, Series> memo_;
};

/// Exponents e_c with g = prod_c c^{e_c} modulo the (T+1)-th lower central term, c running over
/// the Hall basis in increasing order. Recovered weight by weight from the integer series of g
/// by solving for the lowest homogeneous part over Q. Unique by the basis theorem.
inline std::vector<std::pair<hspec::fplie::BasisIndex, mpz_class>> canonical_exponents(MagnusModel& model,
                                                                                       Series g) {
    const auto& basis = model.basis();
    std::vector<std::pair<hspec::fplie::BasisIndex, mpz_class>> out;
    for (int k = 1; k <= model.degree(); ++k) {
        const auto target = g.homogeneous(k);
        const std::size_t rows = target.size();
        const std::size_t first = basis.offset(k);
        const std::size_t cols = basis.count(k);
        // augmented system [V | target] with V's columns the lowest parts of the basic commutators
        std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols + 1));
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = model.core(static_cast<hspec::fplie::BasisIndex>(first + c)).homogeneous(k);
            for (std::size_t r = 0; r < rows; ++r) m[r][c] = v[r];
        }
        for (std::size_t r = 0; r < rows; ++r) m[r][cols] = target[r];
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < rows; ++c) {
            std::size_t piv = rank;
            while (piv < rows && m[piv][c] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[rank]);
            const mpq_class inv = 1 / m[rank][c];
            for (auto& x : m[rank]) x *= inv;
            for (std::size_t r = 0; r < rows; ++r)
                if (r != rank && m[r][c] != 0) {
                    const mpq_class f = m[r][c];
                    for (std::size_t j = c; j <= cols; ++j) m[r][j] -= f * m[rank][j];
                }
            pivot_col.push_back(c);
            ++rank;
        }
        if (rank != cols) throw std::logic_error("basic commutators of one weight are not independent");
        for (std::size_t r = rank; r < rows; ++r)
            if (m[r][cols] != 0) throw std::logic_error("homogeneous part is not a Lie element");
        Series block = model.one();
        for (std::size_t r = 0; r < rank; ++r) {
            mpq_class e = m[r][cols];
            e.canonicalize();
            if (e.get_den() != 1) throw std::logic_error("non-integral exponent");
            if (e == 0) continue;
            const auto idx = static_cast<hspec::fplie::BasisIndex>(first + pivot_col[r]);
            out.emplace_back(idx, e.get_num());
            block = block * model.core(idx).power(e.get_num());
        }
        g = block.inverse() * g;
    }
    return out;
}

}  // namespace oracle
