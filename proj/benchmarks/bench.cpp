#include <benchmark/benchmark.h>

#include "ppi/canon.hpp"
#include "ppi/isometry.hpp"
#include "ppi/linalg.hpp"
#include "ppi/matrix.hpp"
#include "ppi/numrange.hpp"
#include "ppi/rand.hpp"

using namespace ppi;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return hermitian_part(random_gaussian(n, n, rng));
}

void bm_hermitian_eig(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix h = random_hermitian(n, 11);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(bm_hermitian_eig)->Arg(8)->Arg(16)->Arg(32);

void bm_svd(benchmark::State& state) {
    Rng rng(12);
    const ComplexMatrix a = random_gaussian(12, 8, rng);
    for (auto _ : state) benchmark::DoNotOptimize(svd(a));
}
BENCHMARK(bm_svd);

void bm_lambda_max(benchmark::State& state) {
    const ComplexMatrix h = random_hermitian(25, 13);
    for (auto _ : state) benchmark::DoNotOptimize(lambda_max_hermitian(h));
}
BENCHMARK(bm_lambda_max);

void bm_disc_certificate(benchmark::State& state) {
    const ComplexMatrix j = ComplexMatrix::jordan_block(6);
    for (auto _ : state) benchmark::DoNotOptimize(is_disc_at_origin(j));
}
BENCHMARK(bm_disc_certificate);

void bm_staircase(benchmark::State& state) {
    const ComplexMatrix a = random_ppi({3, 2, 2}, 5, 14);
    for (auto _ : state) benchmark::DoNotOptimize(staircase_form(a, 3));
}
BENCHMARK(bm_staircase);

void bm_kron(benchmark::State& state) {
    Rng rng(15);
    const ComplexMatrix a = random_gaussian(8, 8, rng);
    const ComplexMatrix b = random_gaussian(8, 8, rng);
    for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(bm_kron);

void bm_char_poly(benchmark::State& state) {
    Rng rng(16);
    const ComplexMatrix a = random_gaussian(9, 9, rng);
    for (auto _ : state) benchmark::DoNotOptimize(char_poly(a));
}
BENCHMARK(bm_char_poly);

}  // namespace

BENCHMARK_MAIN();
