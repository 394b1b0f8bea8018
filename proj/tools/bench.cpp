// Throughput comparison of the serial reference implementations against the
// vectorized kernels, single-threaded and OpenMP-parallel.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "kernels.hpp"
#include "tailest/experiments.hpp"
#include "tailest/limitlaw.hpp"
#include "tailest/models.hpp"
#include "tailest/series.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

void report(const char* name, double secs, double units, const char* unit_name) {
    std::printf("%-34s %8.3f s   %10.2f M%s/s\n", name, secs, units / secs / 1e6,
                unit_name);
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t b = 20000;
    std::uint64_t n_terms = 2000;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--B") b = std::stoull(argv[i + 1]);
        if (flag == "--N") n_terms = std::stoull(argv[i + 1]);
    }
    const double terms = static_cast<double>(b) * static_cast<double>(n_terms);
    std::printf("limit-law sampling: B=%llu draws, N=%llu terms, %d thread(s) available\n",
                static_cast<unsigned long long>(b),
                static_cast<unsigned long long>(n_terms), omp_get_max_threads());

    const tailest::limitlaw::LimitLawSpec spec(0.3, n_terms);
    std::vector<double> out(b);

    {
        const auto t0 = clock_type::now();
        for (std::uint64_t i = 0; i < b; ++i)
            out[i] = tailest::limitlaw::reference::limit_law_draw(spec, 1, i);
        report("reference (scalar serial)", seconds_since(t0), terms, "terms");
    }

    const auto weights = tailest::kernel::power_weights(n_terms, spec.tau - 1.0);
    const double inv_norm = 1.0 / std::sqrt(spec.zeta_norm);
    {
        const auto t0 = clock_type::now();
        tailest::kernel::limit_law_batch(weights, inv_norm, 1,
                                         tailest::rng::StreamLabel::limit_law, 0, out,
                                         /*parallel=*/false);
        report("kernel (vectorized serial)", seconds_since(t0), terms, "terms");
    }
    {
        const auto t0 = clock_type::now();
        tailest::kernel::limit_law_batch(weights, inv_norm, 1,
                                         tailest::rng::StreamLabel::limit_law, 0, out,
                                         /*parallel=*/true);
        report("kernel (vectorized parallel)", seconds_since(t0), terms, "terms");
    }

    std::printf("\nstudentized campaign: n=100000, k=1000, R=200 replications\n");
    const auto model = tailest::models::pareto_model(1.0);
    {
        const auto t0 = clock_type::now();
        std::vector<double> stats(200);
        for (std::size_t rep = 0; rep < stats.size(); ++rep)
            stats[rep] = tailest::experiments::reference::studentized_one(
                model, 100000, 1000, 0.3, 1.0,
                tailest::rng::replication_seed(1, rep));
        report("reference (full sort serial)", seconds_since(t0), 200.0 * 100000.0,
               "values");
    }
    {
        const auto t0 = clock_type::now();
        (void)tailest::experiments::studentized_batch(model, 100000, 1000, 0.3, 1.0,
                                                      200, 1, /*parallel=*/false);
        report("top-k kernel (serial)", seconds_since(t0), 200.0 * 100000.0, "values");
    }
    {
        const auto t0 = clock_type::now();
        (void)tailest::experiments::studentized_batch(model, 100000, 1000, 0.3, 1.0,
                                                      200, 1, /*parallel=*/true);
        report("top-k kernel (parallel)", seconds_since(t0), 200.0 * 100000.0, "values");
    }
    return 0;
}
