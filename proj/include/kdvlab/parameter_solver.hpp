#pragma once

#include "kdvlab/ansatz_engine.hpp"
#include "kdvlab/exec.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kdvlab {

enum class Branch { family_parameter, root_z1, root_z2 };
const char* branch_name(Branch b);

struct SolutionParams {
    AnsatzFamily family = AnsatzFamily::soliton;
    int order = 1;
    double amplitude = 0.0;     // A
    double inverse_width = 0.0; // B
    double velocity = 0.0;      // v
    double offset = 0.0;        // D, zero for the soliton profile
    double elliptic_m = 0.0;    // unused for the soliton profile
    Branch branch = Branch::family_parameter;
};

// Inconsistency evidence from the dense scan of the normalized
// sum-of-squares over the physical region, in the scale-free variables
// p = alpha*A, q = beta*B^2 (one certificate covers all alpha, beta > 0).
struct ScanCertificate {
    double p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0;
    double v_lo = 0, v_hi = 0, m_lo = 0, m_hi = 0;
    bool negative_amplitude_scanned = false;
    int np = 0, nq = 0, nv = 0, nm = 1;
    double grid_min_ssq = 0;
    double refined_min_ssq = 0;
    double argmin_p = 0, argmin_q = 0, argmin_v = 0, argmin_m = 0;
    double threshold = 0;
};

// Exact elimination evidence: v is removed linearly, afterwards the gcd of
// the pairwise resultants of the remaining conditions (eliminating p) is a
// univariate polynomial in q whose positive roots are counted by Sturm
// chains. A constant gcd or a zero count certifies emptiness.
struct EliminationCertificate {
    bool completed = false;
    std::string eliminated; // gcd of the resultants, univariate in q
    int positive_root_count = -1;
    std::string note;
};

enum class VerdictKind { family, discrete, inconsistent };
const char* verdict_name(VerdictKind k);

struct ConsistencyVerdict {
    VerdictKind kind = VerdictKind::family;
    AnsatzFamily family = AnsatzFamily::soliton;
    int order = 1;
    int dimension = 0; // family verdicts: number of free parameters (besides m)
    std::vector<SolutionParams> solutions;
    std::optional<ScanCertificate> scan;
    std::optional<EliminationCertificate> elimination;
    std::vector<std::string> warnings;
};

// Roots of the order-2 reduction quadratic 152 z^2 - 86 z - 3 = 0, where
// z = q/p (superposition) or z = q m / p (cnoidal) or z = q/p (soliton).
std::pair<double, double> order2_z_roots(); // {z1 < 0, z2 > 0}

ConsistencyVerdict solve_soliton(int order, double alpha, double beta,
                                 std::optional<double> amplitude = std::nullopt,
                                 Exec exec = Exec::serial);
ConsistencyVerdict solve_cnoidal(int order, double alpha, double beta, double m,
                                 std::optional<double> amplitude = std::nullopt,
                                 Exec exec = Exec::serial);
ConsistencyVerdict solve_superposition(int order, bool plus_sign, double alpha, double beta,
                                       double m, std::optional<double> amplitude = std::nullopt,
                                       Exec exec = Exec::serial);

struct AnalysisOptions {
    Exec exec = Exec::serial;
    int resolution = 1;       // grid density multiplier (stability checks double it)
    double threshold = 1e-8;  // classification bound on the refined min SSQ
    double newton_tol = 1e-12;
};

// Classifies a derived condition system: a solution family (with its
// dimension), a discrete solution set, or inconsistent with certificates.
ConsistencyVerdict consistency_analysis(const ConditionSystem& system, double alpha, double beta,
                                        const AnalysisOptions& opts = {});

// Max over conditions (volume row included) of |value| / sum|terms| at the
// given concrete parameters.
double system_residual(const ConditionSystem& system, const SolutionParams& params,
                       double alpha, double beta);

} // namespace kdvlab
