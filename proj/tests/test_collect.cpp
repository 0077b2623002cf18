#include "hspec/collect.hpp"
#include "hspec/errors.hpp"
#include "hspec/unitriangular.hpp"

#include "oracles/magnus.hpp"
#include "oracles/unitriangular.hpp"
#include "oracles/words.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hspec;
using namespace hspec::collect;

TEST(Word, ParseAndPrint) {
    const fplie::HallBasis basis(3, 4);
    const auto w = parse_word("x2 x1 ([x2,x1]^p x3)^2 [[x2,x1],x1]^p^2^3", basis, 3);
    EXPECT_EQ(w.to_string(basis), "x2 x1 [x2,x1]^p x3 [x2,x1]^p x3 [[x2,x1],x1]^p^2^3");
    EXPECT_EQ(parse_word("x1 x1 x1", basis, 3).to_string(basis), "x1^3");
    EXPECT_THROW(parse_word("x4", basis, 3), ParseError);
    EXPECT_THROW(parse_word("[x1,x2]", basis, 3), ParseError);
    EXPECT_THROW(parse_word("x1^0", basis, 3), Error);
    EXPECT_THROW(parse_word("(x1", basis, 3), ParseError);
}

TEST(Collect, WorkedExample) {
    const fplie::HallBasis basis(2, 2);
    const auto w = parse_word("x2 x1 x2 x1", basis, 3);
    const auto nf = collect::collect(w, 2, basis);
    EXPECT_EQ(nf.to_string(basis), "x1^2 x2^2 [x2,x1]^3");
    ASSERT_EQ(nf.entries.size(), 3u);
    EXPECT_EQ(nf.entries[2].e, 1);
    EXPECT_EQ(nf.entries[2].j, 1);
}

TEST(Collect, IdentityAndSorted) {
    const fplie::HallBasis basis(2, 3);
    EXPECT_EQ(collect::collect(GroupWord(2, 3), 3, basis).to_string(basis), "1");
    EXPECT_EQ(collect::collect(parse_word("x1 x2", basis, 3), 3, basis).to_string(basis), "x1 x2");
    // a commutator of weight above the cutoff disappears
    EXPECT_EQ(collect::collect(parse_word("x2 x1", basis, 3), 1, basis).to_string(basis), "x1 x2");
}

TEST(Collect, ResourceCaps) {
    const fplie::HallBasis basis(2, 3);
    CollectLimits limits;
    limits.max_exponent = 10;
    EXPECT_THROW(collect::collect(parse_word("x2^11 x1", basis, 3), 3, basis, CollectMode::class_cutoff, limits),
                 ResourceLimitError);
    limits = CollectLimits{};
    limits.max_steps = 5;
    EXPECT_THROW(collect::collect(parse_word("x2^3 x1^3 x2^3 x1^3", basis, 3), 3, basis, CollectMode::class_cutoff, limits),
                 ResourceLimitError);
}

TEST(Collect, SoundInUnitriangularMatrices) {
    const int r = 4;
    const fplie::HallBasis basis(3, r);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto w = oracle::random_word(basis, 3, {5, 3, 3, 0}, rng);
        const auto nf = collect::collect(w, r, basis);
        std::vector<oracle::Mat> images;
        for (int i = 0; i < 3; ++i) images.push_back(oracle::random_unitriangular(r + 1, rng));
        oracle::MatrixModel model(basis, images);
        EXPECT_EQ(model.word(w), model.normal_form(nf)) << w.to_string(basis);
    }
}

TEST(Collect, LibraryEvaluatorAgreesWithOracle) {
    const int r = 3;
    const fplie::HallBasis basis(2, r);
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const auto w = oracle::random_word(basis, 5, {4, 2, 3, 1}, rng);
        std::vector<IntMatrix> lib;
        std::vector<oracle::Mat> mine;
        for (int i = 0; i < 2; ++i) {
            lib.push_back(random_unitriangular(r + 1, rng));
            oracle::Mat m = oracle::Mat::identity(r + 1);
            for (std::size_t a = 0; a <= static_cast<std::size_t>(r); ++a)
                for (std::size_t b = 0; b <= static_cast<std::size_t>(r); ++b) m.at(a, b) = lib.back()(a, b);
            mine.push_back(m);
        }
        oracle::MatrixModel model(basis, mine);
        const auto got = evaluate_in_unitriangular(w, r, basis, lib);
        const auto want = model.word(w);
        for (std::size_t a = 0; a <= static_cast<std::size_t>(r); ++a)
            for (std::size_t b = 0; b <= static_cast<std::size_t>(r); ++b) EXPECT_EQ(got(a, b), want.at(a, b));
    }
}

TEST(Collect, SoundInMagnusSeries) {
    const int r = 5;
    const fplie::HallBasis basis(3, r);
    oracle::MagnusModel model(basis, r);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const auto w = oracle::random_word(basis, 3, {5, 3, 3, 1}, rng);
        const auto nf = collect::collect(w, r, basis);
        EXPECT_EQ(model.word(w), model.normal_form(nf)) << w.to_string(basis);
    }
}

TEST(Collect, CanonicalExponentsOfGeneratorWords) {
    // a word in generators only collects to the x-basic normal form itself
    const int r = 4;
    const fplie::HallBasis basis(2, r);
    oracle::MagnusModel model(basis, r);
    const auto w = parse_word("x2 x1 x2 x1 x2", basis, 3);
    const auto nf = collect::collect(w, r, basis);
    const auto canon = oracle::canonical_exponents(model, model.word(w));
    ASSERT_EQ(canon.size(), nf.entries.size());
    for (std::size_t k = 0; k < canon.size(); ++k) {
        EXPECT_EQ(basis.to_string(canon[k].first), nf.node_string(nf.entries[k].node, basis));
        EXPECT_EQ(canon[k].second, nf.entries[k].exponent);
    }
}

TEST(Collect, PLevelModeSoundModuloP) {
    const int w_max = 4;
    const std::uint32_t p = 3;
    const fplie::HallBasis basis(2, w_max);
    oracle::MagnusModel model(basis, w_max, p);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const auto w = oracle::random_word(basis, p, {4, 2, 4, 1}, rng);
        const auto nf = collect::collect(w, w_max, basis, CollectMode::p_level);
        EXPECT_EQ(model.word(w), model.normal_form(nf)) << w.to_string(basis);
        for (const auto& e : nf.entries) EXPECT_LE(nf.nodes[static_cast<std::size_t>(e.node)].level(), w_max);
    }
}

TEST(Collect, EntriesOrderedByLetterCount) {
    const fplie::HallBasis basis(3, 5);
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        const auto nf = collect::collect(oracle::random_word(basis, 3, {6, 2, 2, 0}, rng), 5, basis);
        for (std::size_t k = 1; k < nf.entries.size(); ++k) {
            const auto& a = nf.nodes[static_cast<std::size_t>(nf.entries[k - 1].node)];
            const auto& b = nf.nodes[static_cast<std::size_t>(nf.entries[k].node)];
            EXPECT_LE(a.letter_count, b.letter_count);
        }
    }
}

TEST(Phi, GeneratorPowers) {
    const mixedlie::MixedLieAlgebra alg(2, 6, 3);
    const auto r = phi(parse_word("x1^9", alg.basis(), 3), alg);
    EXPECT_EQ(r.degree, 3);
    EXPECT_EQ(r.value, alg.element({2, 0}));
    const auto s = phi(parse_word("x2^6", alg.basis(), 3), alg);
    EXPECT_EQ(s.degree, 2);
    EXPECT_EQ(s.value, alg.element({1, 1}, 2));
    EXPECT_TRUE(phi(GroupWord(2, 3), alg).identity);
}

TEST(Phi, CommutatorsAndSums) {
    const mixedlie::MixedLieAlgebra alg(2, 6, 3);
    const auto c = phi(parse_word("[[x2,x1],x1]^p", alg.basis(), 3), alg);
    EXPECT_EQ(c.degree, 4);
    EXPECT_EQ(c.value, alg.element({1, 3}));
    const auto s = phi(parse_word("x1 x2 x1", alg.basis(), 3), alg);
    EXPECT_EQ(s.degree, 1);
    EXPECT_EQ(s.value, alg.element({0, 0}, 2) + alg.element({0, 1}));
}

TEST(Phi, PthPowerActsAsPi) {
    const mixedlie::MixedLieAlgebra alg(2, 7, 3);
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto w = oracle::random_word(alg.basis(), 3, {3, 2, 2, 1}, rng);
        try {
            const auto a = phi(w, alg);
            const auto b = phi(w.power(3), alg);
            if (a.identity) continue;
            EXPECT_EQ(b.degree, a.degree + 1);
            EXPECT_EQ(b.value, mixedlie::pi_apply(a.value, 1));
            ++checked;
        } catch (const InconclusiveError&) {
        }
    }
    EXPECT_GT(checked, 20);
}

TEST(Phi, InconclusiveBeyondCutoff) {
    const mixedlie::MixedLieAlgebra alg(2, 3, 3);
    EXPECT_THROW(phi(parse_word("x1^27", alg.basis(), 3), alg), InconclusiveError);
}

TEST(PhiCorrespondence, ContainedForSmallSets) {
    const mixedlie::MixedLieAlgebra alg(2, 6, 3);
    const auto& b = alg.basis();
    const std::vector<GenBasicGroupCommutator> gens{{0, b.parse("[x2,x1]")}, {1, b.parse("[[x2,x1],x1]")}};
    PhiSampling s;
    s.samples = 40;
    const auto report = verify_phi_correspondence(gens, alg, s);
    EXPECT_TRUE(report.passed());
    EXPECT_EQ(report.samples, 40u);
    EXPECT_EQ(report.contained + report.inconclusive + report.identity, 40u);
}

TEST(PhiCorrespondence, RejectsBadGenerators) {
    const mixedlie::MixedLieAlgebra alg(2, 6, 3);
    const auto& b = alg.basis();
    EXPECT_THROW(verify_phi_correspondence({{0, b.parse("x1")}}, alg, {}), PreconditionError);
    EXPECT_THROW(verify_phi_correspondence({{0, 2}, {1, 2}}, alg, {}), PreconditionError);
    EXPECT_TRUE(verify_phi_correspondence({}, alg, {}).passed());
}
