#pragma once

// Words and normal forms evaluated in upper unitriangular integer matrices, written without the
// library's own evaluator.

#include "hspec/collect.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

struct Mat {
    std::size_t n = 0;
    std::vector<mpz_class> a;

    static Mat identity(std::size_t n) {
        Mat m{n, std::vector<mpz_class>(n * n)};
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    mpz_class& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat z{x.n, std::vector<mpz_class>(x.n * x.n)};
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t k = i; k < x.n; ++k)
                if (x.at(i, k) != 0)
                    for (std::size_t j = k; j < x.n; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        return z;
    }
    friend bool operator==(const Mat& x, const Mat& y) { return x.a == y.a; }

    /// Inverse of I + N as I - N + N^2 - ..., N nilpotent.
    Mat inverse() const {
        Mat nil = *this;
        for (std::size_t i = 0; i < n; ++i) nil.at(i, i) = 0;
        Mat out = identity(n), term = identity(n);
        for (std::size_t k = 1; k < n; ++k) {
            term = term * nil;
            for (std::size_t i = 0; i < a.size(); ++i) out.a[i] += (k % 2 ? -1 : 1) * term.a[i];
        }
        return out;
    }

    Mat power(mpz_class e) const {
        Mat base = e < 0 ? inverse() : *this;
        if (e < 0) e = -e;
        Mat out = identity(n);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) out = out * base;
            base = base * base;
            e /= 2;
        }
        return out;
    }
};

inline Mat commutator(const Mat& u, const Mat& v) { return u.inverse() * v.inverse() * u * v; }

inline Mat random_unitriangular(std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-3, 3);
    Mat m = Mat::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m.at(i, j) = dist(rng);
    return m;
}

class MatrixModel {
public:
    MatrixModel(const hspec::fplie::HallBasis& basis, std::vector<Mat> images)
        : basis_(basis), images_(std::move(images)) {}

    const Mat& core(hspec::fplie::BasisIndex i) {
        auto it = memo_.find(i);
        if (it != memo_.end()) return it->second;
        const auto& c = basis_[i];
        Mat m = c.is_generator() ? images_.at(static_cast<std::size_t>(c.generator - 1))
                                 : commutator(core(c.left), core(c.right));
        return memo_.emplace(i, std::move(m)).first->second;
    }

    Mat element(const hspec::collect::GenBasicGroupCommutator& g, std::uint32_t p) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(g.exponent_log));
        return core(g.core).power(e);
    }

    Mat word(const hspec::collect::GroupWord& w) {
        Mat out = Mat::identity(images_.front().n);
        for (const auto& f : w.factors()) out = out * element(f.element, w.p()).power(f.exponent);
        return out;
    }

    Mat normal_form(const hspec::collect::NormalForm& nf) {
        std::map<int, Mat> nodes;
        std::function<const Mat&(int)> eval = [&](int k) -> const Mat& {
            auto it = nodes.find(k);
            if (it != nodes.end()) return it->second;
            const auto& n = nf.nodes.at(static_cast<std::size_t>(k));
            Mat m = n.is_letter() ? element(nf.letters.at(static_cast<std::size_t>(n.letter)), nf.p)
                                  : commutator(eval(n.left), eval(n.right));
            return nodes.emplace(k, std::move(m)).first->second;
        };
        Mat out = Mat::identity(images_.front().n);
        for (const auto& e : nf.entries) out = out * eval(e.node).power(e.exponent);
        return out;
    }

private:
    const hspec::fplie::HallBasis& basis_;
    std::vector<Mat> images_;
    std::map<hspec::fplie::BasisIndex, Mat> memo_;
};

}  // namespace oracle
