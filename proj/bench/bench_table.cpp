// Times the composition table: serial reference vs the OpenMP kernel.
// usage: bench_table [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "rayform/rayclass.hpp"

using namespace rayform;

namespace {

template <class F>
double best_of(int repeats, F && f)
{
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s < best) best = s;
    }
    return best;
}

}  // namespace

int main(int argc, char ** argv)
{
    int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
    struct Case {
        long dk;
        qfield::IdealTriple n;
    } const cases[] = {{-20, {2, 4, 6}}, {-23, {3, 9, 12}}, {-23, {1, 7, 16}}, {-95, {1, 8, 20}}, {-95, {3, 3, 36}}, {-119, {3, 9, 36}}};

    std::printf("threads %d\n", omp_get_max_threads());
    std::printf("%-6s %-10s %7s %10s %10s %8s %s\n", "dK", "n", "classes", "serial_s", "omp_s", "speedup", "same");
    for (auto const & c : cases) {
        rayclass::Modulus m = [&] {
            try {
                return rayclass::Modulus::make(qfield::Discriminant::make(c.dk), c.n);
            } catch (std::exception const & e) {
                std::fprintf(stderr, "skip %ld %s: %s\n", c.dk, c.n.str().c_str(), e.what());
                throw;
            }
        }();
        rayclass::ClassGroup serial = rayclass::table_serial(m), parallel = serial;
        double ts = best_of(repeats, [&] { serial = rayclass::table_serial(m); });
        double tp = best_of(repeats, [&] { parallel = rayclass::table(m); });
        bool same = serial.table == parallel.table && serial.invariant_factors == parallel.invariant_factors;
        std::printf("%-6ld %-10s %7zu %10.4f %10.4f %8.2f %s\n", c.dk, c.n.str().c_str(), serial.classes.size(), ts, tp,
                    ts / tp, same ? "yes" : "NO");
    }
    return 0;
}
