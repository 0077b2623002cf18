#pragma once

// Positive words in a free group, Hall collection and the leading-term map into the mixed algebra.

#include "hspec/mixedlie.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hspec::collect {

using fplie::BasisIndex;
using fplie::HallBasis;

/// c^{p^k} for a basic commutator c read as a group commutator, [u,v] = u^-1 v^-1 u v.
struct GenBasicGroupCommutator {
    int exponent_log = 0;
    BasisIndex core = 0;

    friend auto operator<=>(const GenBasicGroupCommutator&, const GenBasicGroupCommutator&) = default;
};

struct WordFactor {
    GenBasicGroupCommutator element;
    BigInt exponent = 1;  // positive
};

/// Caps on expanded word length, exponents and rewriting steps.
struct CollectLimits {
    std::size_t max_word_length = 200'000;
    std::uint64_t max_exponent = 100'000;
    std::uint64_t max_steps = 20'000'000;

    /// Defaults overridden by HSPEC_MAX_WORD_LENGTH / HSPEC_MAX_EXPONENT when set.
    static CollectLimits from_environment();
};

/// A product of positive powers of generalized basic group commutators.
class GroupWord {
public:
    GroupWord(int d, std::uint32_t p) : d_(d), p_(p) {}

    int generators() const noexcept { return d_; }
    std::uint32_t p() const noexcept { return p_; }
    const std::vector<WordFactor>& factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }

    void append(const GenBasicGroupCommutator& element, const BigInt& exponent = 1);
    GroupWord& operator*=(const GroupWord& other);
    GroupWord power(std::uint64_t n) const;

    std::string to_string(const HallBasis& basis) const;

private:
    int d_;
    std::uint32_t p_;
    std::vector<WordFactor> factors_;
};

/// Grammar: a word is a juxtaposition of atoms, an atom is `xi`, a basic commutator such as
/// `[[x2,x1],x1]`, or a parenthesized word, followed by any number of suffixes `^n` (power)
/// or `^p`, `^p^k` (p-power decoration on a commutator, repetition on a parenthesized word).
GroupWord parse_word(std::string_view text, const HallBasis& basis, std::uint32_t p);

enum class CollectMode {
    class_cutoff,  // drop commutators of x-weight > cutoff (modulo gamma_{cutoff+1})
    p_level,       // drop commutators with x-weight + decorations > cutoff (modulo P_{cutoff+1})
};

/// Commutator in the letters of a collection; letters are the distinct decorated factors.
struct CommutatorNode {
    int letter = -1;  // index into NormalForm::letters, or -1 for a bracket
    int left = -1;
    int right = -1;
    int letter_count = 1;
    int x_weight = 0;
    int decoration = 0;  // sum of exponent logs over letter occurrences

    bool is_letter() const noexcept { return letter >= 0; }
    int level() const noexcept { return x_weight + decoration; }
};

struct NormalFormEntry {
    int node = 0;
    BigInt exponent;  // p^e * j with p not dividing j
    std::int64_t e = 0;
    BigInt j;
};

/// Ordered product b_1^{N_1} ... b_m^{N_m} of strictly increasing basic commutators in the letters.
struct NormalForm {
    int cutoff = 0;
    CollectMode mode = CollectMode::class_cutoff;
    std::uint32_t p = 0;
    std::vector<GenBasicGroupCommutator> letters;
    std::vector<CommutatorNode> nodes;
    std::vector<NormalFormEntry> entries;

    std::string node_string(int node, const HallBasis& basis) const;
    /// Space-separated factors, e.g. "x1^2 x2^2 [x2,x1]^3"; "1" for the identity.
    std::string to_string(const HallBasis& basis) const;
    /// Entries keyed by their printed commutator; equal group elements give equal keys.
    std::vector<std::pair<std::string, BigInt>> keyed_entries(const HallBasis& basis) const;
};

/// Collects w into an ordered product modulo gamma_{cutoff+1} (class mode) or P_{cutoff+1}.
NormalForm collect(const GroupWord& w, int cutoff, const HallBasis& basis,
                   CollectMode mode = CollectMode::class_cutoff,
                   const CollectLimits& limits = CollectLimits::from_environment());

/// Lie image of a letter commutator: letters map to their cores, brackets to Lie brackets.
fplie::LieElement lie_image(const NormalForm& nf, int node, const fplie::FreeLieAlgebra& algebra);

struct PhiResult {
    bool identity = false;  // w collected to the empty product (image taken to be 0)
    int degree = 0;         // n = min(e + x-weight + decoration)
    mixedlie::MixedElement value;
};

/// Leading term of w in P_n / P_{n+1}, identified with Lambda_n. Collection runs modulo
/// P_{cutoff+1}; raises InconclusiveError when nothing survives below the cutoff or when the
/// leading terms cancel.
PhiResult phi(const GroupWord& w, const mixedlie::MixedLieAlgebra& algebra,
              const CollectLimits& limits = CollectLimits::from_environment());

struct PhiCorrespondenceReport {
    std::size_t samples = 0;
    std::size_t contained = 0;
    std::size_t not_contained = 0;
    std::size_t inconclusive = 0;
    std::size_t identity = 0;
    std::vector<std::size_t> observed_dims;  // span of observed images, per degree
    std::vector<std::size_t> closure_dims;   // the closure of the generator images, per degree
    std::vector<std::string> failures;

    bool passed() const noexcept { return not_contained == 0; }
};

struct PhiSampling {
    std::size_t samples = 100;
    int max_factors = 6;
    std::uint64_t max_exponent = 3;
    std::uint64_t seed = 1;
};

/// Checks that images of random positive words over the generators lie in the mixed closure
/// of the generator images.
PhiCorrespondenceReport verify_phi_correspondence(const std::vector<GenBasicGroupCommutator>& generators,
                                                  const mixedlie::MixedLieAlgebra& algebra,
                                                  const PhiSampling& sampling,
                                                  const CollectLimits& limits = CollectLimits::from_environment());

}  // namespace hspec::collect
