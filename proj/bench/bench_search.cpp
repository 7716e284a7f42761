// Serial reference vs the OpenMP kernel on a few refutation-heavy instances.
// Usage: bench_search [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <omp.h>

#include "invlab/construct.hpp"
#include "invlab/expr.hpp"
#include "invlab/solver.hpp"

using namespace invlab;

namespace {

struct Instance {
    const char* expr;
    int k; // refuted or found at this k
};

template <class F>
double best_ms(int repeats, F&& f) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    const std::vector<Instance> instances{
        {"join(c3, c3, c3)", 2},
        {"blowup(c3; c3, 3)", 3},
        {"dijoin(c3, join(c3, c3, c3))", 3},
        {"join(qn(7), c3, qn(5))", 3},
    };
    std::vector<int> thread_counts{1, 2, 4};
    if (omp_get_num_procs() > 4) thread_counts.push_back(omp_get_num_procs());

    std::printf("%-32s %2s %6s %10s %12s", "instance", "k", "found", "nodes", "serial_ms");
    for (int t : thread_counts) std::printf(" %9s%-3d", "omp_ms_t", t);
    std::printf("\n");

    for (const Instance& inst : instances) {
        const Digraph d = build_from_expr(inst.expr);
        SearchOutcome ref;
        const double serial = best_ms(repeats, [&] { ref = exists_family_serial(d, inst.k); });
        std::printf("%-32s %2d %6s %10llu %12.2f", inst.expr, inst.k, ref.assignment ? "yes" : "no",
                    static_cast<unsigned long long>(ref.nodes), serial);
        for (int t : thread_counts) {
            SearchOptions o;
            o.threads = t;
            SearchOutcome par;
            const double ms = best_ms(repeats, [&] { par = exists_family(d, inst.k, o); });
            const bool same = par.assignment.has_value() == ref.assignment.has_value() &&
                              (!par.assignment || *par.assignment == *ref.assignment);
            std::printf(" %12.2f%s", ms, same ? "" : "!");
        }
        std::printf("\n");
    }
    std::printf("(! marks a witness differing from the serial reference)\n");
    return 0;
}
