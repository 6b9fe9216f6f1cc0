#include <benchmark/benchmark.h>

#include <random>

#include "d2/bialgd.hpp"
#include "d2/gallery.hpp"

using namespace d2;

namespace {

// small entries, some structured zeros, rank about 3n/4
Mat random_matrix(const Field& f, int n, uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> d(-3, 3);
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = f.of(d(gen));
    for (int i = 3 * n / 4; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = m(i - 1, j) + m(i - 2, j);
    return m;
}

std::vector<SparseVec> random_sparse(const Field& f, int rows, int vars, uint32_t seed) {
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> col(0, vars - 1), c(1, 5);
    std::vector<SparseVec> eqs;
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<int, Scalar>> t;
        for (int k = 0; k < 4; ++k) t.emplace_back(col(gen), f.of(c(gen)));
        eqs.push_back(make_sparse(std::move(t)));
    }
    return eqs;
}

void BM_rref(benchmark::State& st, Field f, Exec exec) {
    Mat m = random_matrix(f, static_cast<int>(st.range(0)), 7);
    for (auto _ : st) benchmark::DoNotOptimize(rref(m, exec).rank());
}

void BM_sparse_kernel(benchmark::State& st, Field f, Exec exec) {
    int n = static_cast<int>(st.range(0));
    auto eqs = random_sparse(f, n * 3 / 4, n, 11);
    for (auto _ : st) benchmark::DoNotOptimize(sparse_kernel(eqs, n, exec).dim());
}

void BM_lu_axioms(benchmark::State& st) {
    Extension e = gallery_extension("scalars_in_M2");
    Chain c = build_chain(e);
    auto l = d2_quasibasis(e, c, true);
    auto r = d2_quasibasis(e, c, false);
    ABialgebroid a = bialgebroid_A(e, c, *l, *r);
    for (auto _ : st) benchmark::DoNotOptimize(verify_axioms(a.bg).ok());
}

}  // namespace

BENCHMARK_CAPTURE(BM_rref, q_serial, Field{}, Exec::serial)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_rref, q_parallel, Field{}, Exec::parallel)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_rref, fp_serial, Field{32003}, Exec::serial)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_rref, fp_parallel, Field{32003}, Exec::parallel)->Arg(96)->Arg(192)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sparse_kernel, q_serial, Field{}, Exec::serial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sparse_kernel, q_parallel, Field{}, Exec::parallel)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sparse_kernel, fp_serial, Field{32003}, Exec::serial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_sparse_kernel, fp_parallel, Field{32003}, Exec::parallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lu_axioms)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
