#include "hspec/collect.hpp"
#include "hspec/fplie.hpp"
#include "hspec/lattice.hpp"
#include "hspec/mixedlie.hpp"
#include "hspec/spectra.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hspec;

static void BM_HallBasis(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fplie::HallBasis(2, w).size());
}
BENCHMARK(BM_HallBasis)->Arg(10)->Arg(14)->Arg(18);

static void BM_LieClosure(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const fplie::FreeLieAlgebra alg(2, w, 3);
    const std::vector<fplie::LieElement> gens{alg.generator(1), alg.element(alg.basis().parse("[x2,x1]"))};
    for (auto _ : state) benchmark::DoNotOptimize(fplie::subalgebra_closure(alg, gens, w).dims());
}
BENCHMARK(BM_LieClosure)->Arg(10)->Arg(14);

static void BM_DensityConstructor(benchmark::State& state) {
    const int w = static_cast<int>(state.range(0));
    const mixedlie::MixedLieAlgebra alg(2, w, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(mixedlie::construct_density_subalgebra(alg, Rational(1, 2), w).generators.size());
}
BENCHMARK(BM_DensityConstructor)->Arg(10)->Arg(14);

static void BM_Collect(benchmark::State& state) {
    const int r = static_cast<int>(state.range(0));
    const fplie::HallBasis basis(3, r);
    const auto w = collect::parse_word("(x3 x2 x1)^3 [x2,x1]^2 x3^2 x1", basis, 3);
    for (auto _ : state) benchmark::DoNotOptimize(collect::collect(w, r, basis).entries.size());
}
BENCHMARK(BM_Collect)->Arg(3)->Arg(5);

static void BM_LatticeCanonicalForm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> entry(-50, 50);
    lattice::RationalMatrix m(n, lattice::RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(entry(rng) + (i == j ? 101 : 0));
    for (auto _ : state) benchmark::DoNotOptimize(lattice::PadicLattice(3, m).colength());
}
BENCHMARK(BM_LatticeCanonicalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_SpectrumScan(benchmark::State& state) {
    const spectra::SpectrumTarget tgt{3, {0, Rational(1, 2), 1}};
    const spectra::Zp2Filtration f(tgt, spectra::GapSequence::tower(), 12);
    std::mt19937_64 rng(3);
    const auto lines = spectra::random_lines(3, 50, rng);
    for (auto _ : state) benchmark::DoNotOptimize(spectra::spectrum_scan(f, lines).inconclusive);
}
BENCHMARK(BM_SpectrumScan);

BENCHMARK_MAIN();
