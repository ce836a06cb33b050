// Timing comparison of the serial reference kernels against the OpenMP
// variants, with an exactness check (the parallel paths are written to be
// bit-identical to serial).

#include "kdvlab/evolver.hpp"
#include "kdvlab/numeric_verifier.hpp"
#include "kdvlab/parameter_solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

using namespace kdvlab;

namespace {

template <class F>
double time_ms(F&& f, int reps = 1) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms, double diff) {
    std::printf("%-28s %10.2f %10.2f %8.2fx   %.3g\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, diff);
}

} // namespace

int main() {
    std::printf("%-28s %10s %10s %9s   %s\n", "kernel", "serial/ms", "omp/ms", "speedup",
                "max|delta|");

    { // inconsistency scan, third-order soliton system
        ConditionSystem sys = derive_conditions(AnsatzFamily::soliton, 3);
        AnalysisOptions opt_s, opt_p;
        opt_s.exec = Exec::serial;
        opt_p.exec = Exec::parallel;
        ConsistencyVerdict vs, vp;
        double ts = time_ms([&] { vs = consistency_analysis(sys, 0.1, 0.1, opt_s); });
        double tp = time_ms([&] { vp = consistency_analysis(sys, 0.1, 0.1, opt_p); });
        row("certificate_scan_order3", ts, tp,
            std::abs(vs.scan->grid_min_ssq - vp.scan->grid_min_ssq));
    }

    { // grid residual of a second-order cnoidal solution
        ConsistencyVerdict v = solve_cnoidal(2, 0.1, 0.1, 0.9);
        const SolutionParams& s = v.solutions.front();
        GridSpec grid{-16.0 / s.inverse_width, 32.0 / s.inverse_width, 1 << 17};
        double rs = 0, rp = 0;
        double ts = time_ms([&] { rs = residual_max(s, 2, 0.1, 0.1, grid, 0.0, Exec::serial); });
        double tp = time_ms([&] { rp = residual_max(s, 2, 0.1, 0.1, grid, 0.0, Exec::parallel); });
        row("residual_grid_2^17", ts, tp, std::abs(rs - rp));
    }

    { // field evaluation
        ConsistencyVerdict v = solve_soliton(2, 0.1, 0.1);
        const SolutionParams& s = v.solutions.front();
        GridSpec grid{-16.0 / s.inverse_width, 32.0 / s.inverse_width, 1 << 20};
        WaveField fs, fp;
        double ts = time_ms([&] { fs = eval_field(s, grid, 3.0, Exec::serial); }, 3);
        double tp = time_ms([&] { fp = eval_field(s, grid, 3.0, Exec::parallel); }, 3);
        double diff = 0;
        for (std::size_t i = 0; i < fs.samples.size(); ++i)
            diff = std::max(diff, std::abs(fs.samples[i] - fp.samples[i]));
        row("eval_field_2^20", ts, tp, diff);
    }

    { // evolver steps
        ConsistencyVerdict v = solve_soliton(2, 0.1, 0.1);
        const SolutionParams& s = v.solutions.front();
        GridSpec grid{-16.0 / s.inverse_width, 32.0 / s.inverse_width, 4096};
        WaveField init = eval_field(s, grid, 0.0);
        EvolveOptions o;
        o.order = 2;
        o.alpha = o.beta = 0.1;
        o.t_final = 0.5;
        o.snapshot_count = 2;
        EvolutionRun runs, runp;
        o.exec = Exec::serial;
        double ts = time_ms([&] { runs = evolve(init, o); });
        o.exec = Exec::parallel;
        double tp = time_ms([&] { runp = evolve(init, o); });
        double diff = 0;
        const auto& a = runs.snapshots.back().field.samples;
        const auto& b = runp.snapshots.back().field.samples;
        for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
        row("evolve_4096_t0.5", ts, tp, diff);
    }
    return 0;
}
