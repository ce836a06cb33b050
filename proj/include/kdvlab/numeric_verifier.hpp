#pragma once

#include "kdvlab/exec.hpp"
#include "kdvlab/parameter_solver.hpp"

#include <string>
#include <vector>

namespace kdvlab {

struct GridSpec {
    double x0 = 0.0;    // left edge
    double length = 0.0; // periodic length
    int n = 0;          // power of two, >= 16
};

struct WaveField {
    std::vector<double> samples;
    double x0 = 0.0;
    double dx = 0.0;

    std::size_t size() const { return samples.size(); }
    double length() const { return dx * static_cast<double>(samples.size()); }
    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    void validate() const;
};

// Samples the profile at x_i - v*t. Elliptic families require m in (0,1).
WaveField eval_field(const SolutionParams& params, const GridSpec& grid, double t,
                     Exec exec = Exec::serial);

// Pointwise equation residual normalized by the largest term magnitude,
// maximized over the grid. Every derivative is evaluated from the exact
// symbolic expression of the profile; no finite differences anywhere.
double residual_max(const SolutionParams& params, int order, double alpha, double beta,
                    const GridSpec& grid, double t = 0.0, Exec exec = Exec::serial);

// Period-average of eta over one full period 4K(m)/B, composite 64-node
// Gauss-Legendre per quarter period. Soliton profiles are a usage error.
double volume_mean(const SolutionParams& params);

// CSV with header "x,eta", one row per sample, 17 significant digits.
void write_field_csv(const WaveField& field, const std::string& path);
WaveField read_field_csv(const std::string& path);

} // namespace kdvlab
