#include "hspec/collect.hpp"

#include "hspec/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <random>
#include <tuple>

namespace hspec::collect {

CollectLimits CollectLimits::from_environment() {
    CollectLimits limits;
    if (const char* v = std::getenv("HSPEC_MAX_WORD_LENGTH")) limits.max_word_length = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("HSPEC_MAX_EXPONENT")) limits.max_exponent = std::strtoull(v, nullptr, 10);
    return limits;
}

// ---------------------------------------------------------------------------------------------
// GroupWord

void GroupWord::append(const GenBasicGroupCommutator& element, const BigInt& exponent) {
    if (exponent < 1) throw PreconditionError("word exponents must be positive");
    if (element.exponent_log < 0) throw PreconditionError("negative p-power decoration");
    if (!factors_.empty() && factors_.back().element == element) {
        factors_.back().exponent += exponent;
        return;
    }
    factors_.push_back({element, exponent});
}

GroupWord& GroupWord::operator*=(const GroupWord& other) {
    if (other.d_ != d_ || other.p_ != p_) throw PreconditionError("multiplying words over different alphabets");
    for (const auto& f : other.factors_) append(f.element, f.exponent);
    return *this;
}

GroupWord GroupWord::power(std::uint64_t n) const {
    if (n < 1) throw PreconditionError("word powers must be positive");
    GroupWord out(d_, p_);
    for (std::uint64_t i = 0; i < n; ++i) out *= *this;
    return out;
}

namespace {

std::string element_string(const GenBasicGroupCommutator& g, const HallBasis& basis) {
    std::string s = basis.to_string(g.core);
    if (g.exponent_log == 1) s += "^p";
    else if (g.exponent_log > 1) s += "^p^" + std::to_string(g.exponent_log);
    return s;
}

}  // namespace

std::string GroupWord::to_string(const HallBasis& basis) const {
    if (factors_.empty()) return "1";
    std::string out;
    for (const auto& f : factors_) {
        if (!out.empty()) out += ' ';
        out += element_string(f.element, basis);
        if (f.exponent != 1) out += "^" + f.exponent.get_str();
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Parser

namespace {

class WordParser {
public:
    WordParser(std::string_view text, const HallBasis& basis, std::uint32_t p)
        : text_(text), basis_(basis), p_(p) {}

    GroupWord parse() {
        GroupWord w = parse_sequence();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return w;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("word parse error at position " + std::to_string(pos_) + ": " + what);
    }

    void skip_space() {
        while (pos_ < text_.size() && (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*'))
            ++pos_;
    }

    bool at(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    BigInt parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    GroupWord parse_sequence() {
        GroupWord w(basis_.generators(), p_);
        while (true) {
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] == ')') break;
            w *= parse_atom();
        }
        return w;
    }

    GroupWord parse_atom() {
        skip_space();
        GroupWord base(basis_.generators(), p_);
        bool single = false;
        GenBasicGroupCommutator element;
        if (text_[pos_] == '(') {
            ++pos_;
            base = parse_sequence();
            if (!at(')')) fail("missing ')'");
            ++pos_;
        } else if (text_[pos_] == '[') {
            int depth = 0;
            const std::size_t start = pos_;
            do {
                if (text_[pos_] == '[') ++depth;
                else if (text_[pos_] == ']') --depth;
                ++pos_;
            } while (pos_ < text_.size() && depth > 0);
            if (depth != 0) fail("unbalanced bracket");
            element.core = basis_.parse(text_.substr(start, pos_ - start));
            single = true;
        } else if (text_[pos_] == 'x') {
            const std::size_t start = pos_++;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            element.core = basis_.parse(text_.substr(start, pos_ - start));
            single = true;
        } else {
            fail("expected a generator, a commutator or '('");
        }

        BigInt exponent = 1;
        while (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            if (pos_ < text_.size() && text_[pos_] == 'p') {
                ++pos_;
                std::uint64_t k = 1;
                if (pos_ + 1 < text_.size() && text_[pos_] == '^' &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                    ++pos_;
                    const BigInt kk = parse_number();
                    if (kk > 1000) fail("p-power decoration too large");
                    k = kk.get_ui();
                }
                if (single && exponent == 1) element.exponent_log += static_cast<int>(k);
                else exponent *= pow_big(p_, k);
            } else {
                const BigInt n = parse_number();
                if (n < 1) fail("exponents must be positive");
                exponent *= n;
            }
        }
        if (single) {
            GroupWord w(basis_.generators(), p_);
            w.append(element, exponent);
            return w;
        }
        if (!exponent.fits_ulong_p() || exponent > 100'000) fail("power of a parenthesized word too large");
        return base.empty() ? base : base.power(exponent.get_ui());
    }

    std::string_view text_;
    const HallBasis& basis_;
    std::uint32_t p_;
    std::size_t pos_ = 0;
};

}  // namespace

GroupWord parse_word(std::string_view text, const HallBasis& basis, std::uint32_t p) {
    if (!is_prime(p)) throw PreconditionError("word modulus must be prime");
    return WordParser(text, basis, p).parse();
}

// ---------------------------------------------------------------------------------------------
// Collection

namespace {

class Collector {
public:
    Collector(NormalForm& nf, int cutoff, CollectMode mode, const CollectLimits& limits)
        : nf_(nf), cutoff_(cutoff), mode_(mode), limits_(limits) {}

    bool within_cutoff(const CommutatorNode& n) const {
        return (mode_ == CollectMode::class_cutoff ? n.x_weight : n.level()) <= cutoff_;
    }

    int compare(int a, int b) const {
        if (a == b) return 0;
        const CommutatorNode& x = nf_.nodes[static_cast<std::size_t>(a)];
        const CommutatorNode& y = nf_.nodes[static_cast<std::size_t>(b)];
        if (x.letter_count != y.letter_count) return x.letter_count < y.letter_count ? -1 : 1;
        if (x.is_letter()) return x.letter < y.letter ? -1 : 1;
        if (const int c = compare(x.left, y.left); c != 0) return c;
        return compare(x.right, y.right);
    }

    // [a,b] for a > b, or -1 when it falls beyond the cutoff.
    int commutator(int a, int b) {
        const CommutatorNode& x = nf_.nodes[static_cast<std::size_t>(a)];
        const CommutatorNode& y = nf_.nodes[static_cast<std::size_t>(b)];
        CommutatorNode n;
        n.left = a;
        n.right = b;
        n.letter_count = x.letter_count + y.letter_count;
        n.x_weight = x.x_weight + y.x_weight;
        n.decoration = x.decoration + y.decoration;
        if (!within_cutoff(n)) return -1;
        if (!x.is_letter() && compare(x.right, b) > 0)
            throw std::logic_error("collection produced a non-basic commutator");
        const auto key = std::make_pair(a, b);
        if (const auto it = interned_.find(key); it != interned_.end()) return it->second;
        nf_.nodes.push_back(n);
        const int id = static_cast<int>(nf_.nodes.size() - 1);
        interned_.emplace(key, id);
        return id;
    }

    void run(std::vector<int> word) {
        std::vector<std::pair<int, BigInt>> collected;
        std::size_t start = 0;
        std::uint64_t steps = 0;
        while (start < word.size()) {
            std::size_t best = start;
            for (std::size_t i = start + 1; i < word.size(); ++i)
                if (compare(word[i], word[best]) < 0) best = i;
            const int m = word[best];
            // Move the leftmost minimal element to the front: c m -> m c [c,m].
            for (std::size_t pos = best; pos > start; --pos) {
                if (++steps > limits_.max_steps) throw ResourceLimitError("collection exceeded the step cap");
                const int c = word[pos - 1];
                word[pos - 1] = m;
                word[pos] = c;
                const int created = commutator(c, m);
                if (created >= 0) {
                    word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos) + 1, created);
                    if (word.size() - start > limits_.max_word_length)
                        throw ResourceLimitError("collection exceeded the word-length cap");
                }
            }
            if (!collected.empty() && collected.back().first == m) collected.back().second += 1;
            else collected.emplace_back(m, 1);
            ++start;
        }
        for (auto& [node, count] : collected) {
            NormalFormEntry e;
            e.node = node;
            e.exponent = count;
            e.e = valuation(count, nf_.p);
            e.j = count / pow_big(nf_.p, static_cast<std::uint64_t>(e.e));
            nf_.entries.push_back(std::move(e));
        }
    }

private:
    NormalForm& nf_;
    int cutoff_;
    CollectMode mode_;
    const CollectLimits& limits_;
    std::map<std::pair<int, int>, int> interned_;
};

}  // namespace

std::string NormalForm::node_string(int node, const HallBasis& basis) const {
    const CommutatorNode& n = nodes.at(static_cast<std::size_t>(node));
    if (n.is_letter()) return element_string(letters.at(static_cast<std::size_t>(n.letter)), basis);
    return "[" + node_string(n.left, basis) + "," + node_string(n.right, basis) + "]";
}

std::string NormalForm::to_string(const HallBasis& basis) const {
    if (entries.empty()) return "1";
    std::string out;
    for (const auto& e : entries) {
        if (!out.empty()) out += ' ';
        out += node_string(e.node, basis);
        if (e.exponent != 1) out += "^" + e.exponent.get_str();
    }
    return out;
}

std::vector<std::pair<std::string, BigInt>> NormalForm::keyed_entries(const HallBasis& basis) const {
    std::vector<std::pair<std::string, BigInt>> out;
    for (const auto& e : entries) out.emplace_back(node_string(e.node, basis), e.exponent);
    return out;
}

NormalForm collect(const GroupWord& w, int cutoff, const HallBasis& basis, CollectMode mode,
                   const CollectLimits& limits) {
    if (cutoff < 1) throw PreconditionError("collection cutoff must be >= 1");
    if (w.generators() != basis.generators()) throw PreconditionError("word and Hall basis disagree on generators");
    NormalForm nf;
    nf.cutoff = cutoff;
    nf.mode = mode;
    nf.p = w.p();

    for (const auto& f : w.factors()) {
        if (f.element.core >= basis.size()) throw PreconditionError("word factor outside the Hall basis");
        nf.letters.push_back(f.element);
    }
    std::sort(nf.letters.begin(), nf.letters.end(), [](const auto& a, const auto& b) {
        return std::tie(a.core, a.exponent_log) < std::tie(b.core, b.exponent_log);
    });
    nf.letters.erase(std::unique(nf.letters.begin(), nf.letters.end()), nf.letters.end());
    for (std::size_t i = 0; i < nf.letters.size(); ++i) {
        CommutatorNode n;
        n.letter = static_cast<int>(i);
        n.x_weight = basis.weight(nf.letters[i].core);
        n.decoration = nf.letters[i].exponent_log;
        nf.nodes.push_back(n);
    }

    Collector collector(nf, cutoff, mode, limits);
    std::vector<int> word;
    for (const auto& f : w.factors()) {
        const auto it = std::find(nf.letters.begin(), nf.letters.end(), f.element);
        const int id = static_cast<int>(it - nf.letters.begin());
        if (!collector.within_cutoff(nf.nodes[static_cast<std::size_t>(id)])) continue;
        if (!f.exponent.fits_ulong_p() || f.exponent.get_ui() > limits.max_exponent)
            throw ResourceLimitError("word exponent " + f.exponent.get_str() + " exceeds the exponent cap");
        const std::size_t copies = f.exponent.get_ui();
        if (word.size() + copies > limits.max_word_length)
            throw ResourceLimitError("expanded word exceeds the word-length cap");
        word.insert(word.end(), copies, id);
    }
    collector.run(std::move(word));
    return nf;
}

// ---------------------------------------------------------------------------------------------
// Leading terms

fplie::LieElement lie_image(const NormalForm& nf, int node, const fplie::FreeLieAlgebra& algebra) {
    const CommutatorNode& n = nf.nodes.at(static_cast<std::size_t>(node));
    if (n.is_letter()) return algebra.element(nf.letters[static_cast<std::size_t>(n.letter)].core);
    if (n.x_weight > algebra.max_weight()) throw PreconditionError("commutator heavier than the Lie algebra cutoff");
    return algebra.bracket(lie_image(nf, n.left, algebra), lie_image(nf, n.right, algebra));
}

PhiResult phi(const GroupWord& w, const mixedlie::MixedLieAlgebra& algebra, const CollectLimits& limits) {
    if (w.p() != algebra.field().p()) throw PreconditionError("word and algebra use different primes");
    PhiResult result{false, 0, algebra.zero()};
    if (w.empty()) {
        result.identity = true;
        return result;
    }
    const int cutoff = algebra.max_weight();
    const NormalForm nf = collect(w, cutoff, algebra.basis(), CollectMode::p_level, limits);
    if (nf.entries.empty())
        throw InconclusiveError("word lies in P_" + std::to_string(cutoff + 1) + "; raise the cutoff");

    std::int64_t n = kInfiniteValuation;
    for (const auto& e : nf.entries) n = std::min(n, e.e + nf.nodes[static_cast<std::size_t>(e.node)].level());
    if (n > cutoff) throw InconclusiveError("leading degree beyond the cutoff; raise the cutoff");

    const PrimeField& field = algebra.field();
    for (const auto& e : nf.entries) {
        const CommutatorNode& node = nf.nodes[static_cast<std::size_t>(e.node)];
        if (e.e + node.level() != n) continue;
        const BigInt jmod = e.j % field.p();
        const std::uint32_t j = static_cast<std::uint32_t>(jmod.get_ui());
        const int pi_power = static_cast<int>(e.e) + node.decoration;
        const fplie::LieElement image = lie_image(nf, e.node, algebra.lie());
        for (const auto& [i, c] : image.terms())
            result.value.add_term({pi_power, i}, field.mul(c, j));
    }
    if (result.value.is_zero())
        throw InconclusiveError("leading terms cancel at degree " + std::to_string(n) + "; the image lies deeper");
    result.degree = static_cast<int>(n);
    return result;
}

PhiCorrespondenceReport verify_phi_correspondence(const std::vector<GenBasicGroupCommutator>& generators,
                                                  const mixedlie::MixedLieAlgebra& algebra,
                                                  const PhiSampling& sampling, const CollectLimits& limits) {
    const HallBasis& basis = algebra.basis();
    const int cutoff = algebra.max_weight();
    std::vector<mixedlie::GeneralizedBasicCommutator> images;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        const auto& g = generators[i];
        if (g.core >= basis.size()) throw PreconditionError("generator core outside the Hall basis");
        if (basis.weight(g.core) < 2) throw PreconditionError("generator cores must have weight >= 2");
        if (basis.weight(g.core) + g.exponent_log > cutoff)
            throw PreconditionError("generator heavier than the cutoff");
        for (std::size_t k = 0; k < i; ++k)
            if (generators[k].core == g.core) throw PreconditionError("generators must have distinct cores");
        images.push_back({g.exponent_log, g.core});
    }

    PhiCorrespondenceReport report;
    const mixedlie::MixedGradedSubspace h = mixedlie::mixed_closure(algebra, images, cutoff);
    report.closure_dims = h.dims();
    std::vector<EchelonBasis> observed;
    for (int n = 1; n <= cutoff; ++n) observed.emplace_back(algebra.field(), algebra.degree_size(n));

    if (generators.empty()) {
        report.observed_dims.assign(static_cast<std::size_t>(cutoff), 0);
        return report;
    }
    std::mt19937_64 rng(sampling.seed);
    const int max_factors = std::max(1, sampling.max_factors);
    const std::uint64_t max_exponent = std::max<std::uint64_t>(1, sampling.max_exponent);
    for (std::size_t s = 0; s < sampling.samples; ++s) {
        GroupWord w(basis.generators(), algebra.field().p());
        const int length = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_factors));
        for (int f = 0; f < length; ++f) {
            const auto& g = generators[rng() % generators.size()];
            w.append(g, BigInt(static_cast<unsigned long>(1 + rng() % max_exponent)));
        }
        ++report.samples;
        try {
            const PhiResult r = phi(w, algebra, limits);
            if (r.identity) {
                ++report.identity;
                continue;
            }
            if (h.contains(algebra, r.value)) {
                ++report.contained;
            } else {
                ++report.not_contained;
                if (report.failures.size() < 20) report.failures.push_back(w.to_string(basis));
            }
            observed[static_cast<std::size_t>(r.degree - 1)].insert(algebra.coordinates(r.value, r.degree));
        } catch (const InconclusiveError&) {
            ++report.inconclusive;
        }
    }
    for (const auto& o : observed) report.observed_dims.push_back(o.rank());
    return report;
}

}  // namespace hspec::collect
