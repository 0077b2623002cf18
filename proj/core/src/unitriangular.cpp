#include "hspec/unitriangular.hpp"

#include "hspec/errors.hpp"

#include <map>

namespace hspec::collect {

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n, BigInt(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::is_unitriangular() const {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw PreconditionError("matrix size mismatch");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

IntMatrix IntMatrix::unitriangular_inverse() const {
    if (!is_unitriangular()) throw PreconditionError("matrix is not unitriangular");
    // Solve A X = I column by column from the bottom row up.
    IntMatrix x = identity(n_);
    for (std::size_t col = 0; col < n_; ++col)
        for (std::size_t i = col; i-- > 0;) {
            BigInt s = 0;
            for (std::size_t k = i + 1; k <= col; ++k) s += (*this)(i, k) * x(k, col);
            x(i, col) = -s;
        }
    return x;
}

IntMatrix IntMatrix::power(const BigInt& exponent) const {
    if (exponent < 0) return unitriangular_inverse().power(-exponent);
    IntMatrix result = identity(n_);
    IntMatrix base = *this;
    BigInt e = exponent;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

IntMatrix group_commutator(const IntMatrix& u, const IntMatrix& v) {
    return u.unitriangular_inverse() * v.unitriangular_inverse() * u * v;
}

IntMatrix random_unitriangular(std::size_t n, std::mt19937_64& rng, int lo, int hi) {
    IntMatrix m = IntMatrix::identity(n);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = lo + static_cast<long>(rng() % span);
    return m;
}

namespace {

class Evaluator {
public:
    Evaluator(int nilpotency_class, const HallBasis& basis, const std::vector<IntMatrix>& assignment, std::uint32_t p)
        : basis_(basis), assignment_(assignment), p_(p) {
        if (nilpotency_class < 1) throw PreconditionError("nilpotency class must be >= 1");
        if (assignment.size() != static_cast<std::size_t>(basis.generators()))
            throw PreconditionError("assignment needs one matrix per generator");
        for (const auto& m : assignment)
            if (m.size() != static_cast<std::size_t>(nilpotency_class) + 1 || !m.is_unitriangular())
                throw PreconditionError("assignment matrices must be unitriangular of size class + 1");
    }

    const IntMatrix& core(fplie::BasisIndex c) {
        if (const auto it = cores_.find(c); it != cores_.end()) return it->second;
        const auto& bc = basis_[c];
        IntMatrix m = bc.is_generator() ? assignment_[static_cast<std::size_t>(bc.generator - 1)]
                                        : group_commutator(core(bc.left), core(bc.right));
        return cores_.emplace(c, std::move(m)).first->second;
    }

    IntMatrix element(const GenBasicGroupCommutator& g) {
        return core(g.core).power(pow_big(p_, static_cast<std::uint64_t>(g.exponent_log)));
    }

    std::size_t size() const { return assignment_.front().size(); }

private:
    const HallBasis& basis_;
    const std::vector<IntMatrix>& assignment_;
    std::uint32_t p_;
    std::map<fplie::BasisIndex, IntMatrix> cores_;
};

IntMatrix evaluate_node(const NormalForm& nf, int node, Evaluator& ev, std::map<int, IntMatrix>& memo) {
    if (const auto it = memo.find(node); it != memo.end()) return it->second;
    const CommutatorNode& n = nf.nodes.at(static_cast<std::size_t>(node));
    IntMatrix m = n.is_letter() ? ev.element(nf.letters[static_cast<std::size_t>(n.letter)])
                                : group_commutator(evaluate_node(nf, n.left, ev, memo),
                                                   evaluate_node(nf, n.right, ev, memo));
    memo.emplace(node, m);
    return m;
}

}  // namespace

IntMatrix evaluate_in_unitriangular(const GroupWord& w, int nilpotency_class, const HallBasis& basis,
                                    const std::vector<IntMatrix>& assignment) {
    Evaluator ev(nilpotency_class, basis, assignment, w.p());
    IntMatrix result = IntMatrix::identity(ev.size());
    for (const auto& f : w.factors()) result = result * ev.element(f.element).power(f.exponent);
    return result;
}

IntMatrix evaluate_in_unitriangular(const NormalForm& nf, int nilpotency_class, const HallBasis& basis,
                                    const std::vector<IntMatrix>& assignment) {
    Evaluator ev(nilpotency_class, basis, assignment, nf.p);
    IntMatrix result = IntMatrix::identity(ev.size());
    std::map<int, IntMatrix> memo;
    for (const auto& e : nf.entries) result = result * evaluate_node(nf, e.node, ev, memo).power(e.exponent);
    return result;
}

}  // namespace hspec::collect
