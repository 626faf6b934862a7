#include "polyflow/corpus.hpp"
#include "polyflow/darboux.hpp"
#include "polyflow/model.hpp"
#include "polyflow/ode.hpp"
#include "polyflow/structure.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace polyflow;

namespace {

Polynomial dense(int degree, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-20, 20);
    Polynomial p;
    for (int a = 0; a <= degree; ++a)
        for (int b = 0; a + b <= degree; ++b)
            for (int c = 0; a + b + c <= degree; ++c) p += Polynomial::term(Monomial(a, b, c), Rational(coeff(rng), 3));
    return p;
}

VectorField three_wave(const Rational& gamma, const Rational& delta) {
    return bind_field(load_model(corpus_dir() / "three_wave.model"), {{"gamma", gamma}, {"delta", delta}});
}

void BM_PolynomialProduct(benchmark::State& state) {
    const auto a = dense(static_cast<int>(state.range(0)), 1);
    const auto b = dense(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
    state.counters["terms"] = static_cast<double>(a.size());
}
BENCHMARK(BM_PolynomialProduct)->Arg(2)->Arg(4)->Arg(6);

void BM_SearchNumeric(benchmark::State& state) {
    const auto X = three_wave(-1, 0);
    SearchConfig cfg;
    cfg.degree = static_cast<int>(state.range(0));
    cfg.starts = 64;
    cfg.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(search(X, cfg));
}
BENCHMARK(BM_SearchNumeric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SearchExactConstant(benchmark::State& state) {
    const auto X = bind_field(load_model(corpus_dir() / "rabinovich.model"),
                              {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}});
    for (auto _ : state) benchmark::DoNotOptimize(search_constant_cofactor_exact(X, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SearchExactConstant)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MetriplecticCheck(benchmark::State& state) {
    const auto m = load_model(corpus_dir() / "rabinovich.model");
    const auto claim = bind_claim(m, *m.find_claim("metriplectic"), {{"h", 0}, {"nu1", 1}, {"nu2", 1}, {"nu3", 1}});
    for (auto _ : state) benchmark::DoNotOptimize(check_metriplectic(claim.field.components(), *claim.structure));
}
BENCHMARK(BM_MetriplecticCheck)->Unit(benchmark::kMicrosecond);

void BM_RK4(benchmark::State& state) {
    const auto X = three_wave(-1, 0);
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(X, {0.1, 0.2, 0.3}, 0, 1, h));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RK4)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
