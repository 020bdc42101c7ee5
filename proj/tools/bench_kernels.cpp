// Benchmark comparing the serial reference kernels against the OpenMP
// versions on a mid-sized point space.  Verifies that both produce identical
// results before reporting timings.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dynamo/dynamics.hpp"
#include "dynamo/enumerate.hpp"

using namespace dynamo;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

template <typename F>
std::pair<double, decltype(std::declval<F>()())> timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    return {ms_since(t0), std::move(result)};
}

void row(const std::string& kernel, std::uint64_t size, double serial_ms, double parallel_ms,
         bool equal) {
    std::printf("%-22s %12llu %12.1f %12.1f %9.2fx %s\n", kernel.c_str(),
                static_cast<unsigned long long>(size), serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    // F_{2^11}^2 with a squaring-type map: about 4.2M points
    ContextPtr ctx = PAdicContext::make(2, 11, 8);
    const unsigned dim = 2;
    Polynomial f0 =
        parse_polynomial("X0^2 + 2*X1", ctx, dim);
    Polynomial f1 = parse_polynomial("X1^2 + 2*X0", ctx, dim);
    PolyMap map(ctx, {f0, f1});
    ResidueMap fbar = reduce_map(map);
    PointSpace space(ctx, dim, 100'000'000);
    std::printf("point space: q=%llu dim=%u size=%llu\n\n",
                static_cast<unsigned long long>(ctx->field_card()), dim,
                static_cast<unsigned long long>(space.size));

    std::printf("%-22s %12s %12s %12s %9s\n", "kernel", "points", "serial ms", "omp ms",
                "speedup");

    auto [t_table_s, table_s] =
        timed([&] { return transition_table_serial(space, fbar.components()); });
    auto [t_table_p, table_p] = timed([&] { return transition_table(space, fbar.components()); });
    row("transition_table", space.size, t_table_s, t_table_p, table_s == table_p);

    auto [t_cyc_s, cycles_s] = timed([&] { return collect_cycles_serial(space, table_s, 8); });
    auto [t_cyc_p, cycles_p] = timed([&] { return collect_cycles(space, table_s, 8); });
    bool cyc_equal = cycles_s.size() == cycles_p.size();
    for (std::size_t i = 0; cyc_equal && i < cycles_s.size(); ++i)
        cyc_equal = cycles_s[i].points == cycles_p[i].points;
    row("collect_cycles", space.size, t_cyc_s, t_cyc_p, cyc_equal);

    std::uint64_t target = space.encode({ctx->residue_one(), ctx->residue_one()});
    auto [t_pre_s, pre_s] =
        timed([&] { return preimages_under_iterate_serial(table_s, target, 4); });
    auto [t_pre_p, pre_p] = timed([&] { return preimages_under_iterate(table_s, target, 4); });
    row("preimages (n=4)", space.size, t_pre_s, t_pre_p, pre_s == pre_p);

    std::vector<ResiduePoly> diag = {reduce_poly(parse_polynomial("X0 - X1", ctx, dim))};
    auto [t_var_s, var_s] = timed([&] { return vanishing_points_serial(space, diag); });
    auto [t_var_p, var_p] = timed([&] { return vanishing_points(space, diag); });
    row("vanishing_points", space.size, t_var_s, t_var_p, var_s == var_p);

    return 0;
}
