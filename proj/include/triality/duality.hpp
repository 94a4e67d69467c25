// duality.hpp
// Visibility, predictability, global entanglement, the triality sum
// Q + (1/3) sum_k (V_k^2 + P_k^2), and the analytic sweep curves.

#pragma once

#include "triality/circuit.hpp"
#include "triality/qcore.hpp"

namespace triality {

struct DualityMetrics {
    double visibility = 0.0;     // V = 2 |rho12|
    double predictability = 0.0; // P = |rho22 - rho11|
};

struct TrialityReport {
    std::array<DualityMetrics, 3> per_qubit{};  // indexed by qubit_index()
    double q_global = 0.0;
    double mean_v_squared = 0.0;  // (1/3) sum_k V_k^2
    double mean_p_squared = 0.0;  // (1/3) sum_k P_k^2
    double triality_sum = 0.0;    // q_global + mean_v_squared + mean_p_squared
};

// Linear-inversion reconstructions can be marginally non-physical under
// shot noise, so metrics accept eigenvalues in [-tol, 1+tol] with this
// default; pass a tighter tolerance to be strict about exact inputs.
inline constexpr double kMetricsTol = 0.05;

double visibility(const ComplexMatrix2& rho, double tolerance = kMetricsTol);
double predictability(const ComplexMatrix2& rho, double tolerance = kMetricsTol);

// Q = (2/3) [3 - Tr(rho_A^2) - Tr(rho_B^2) - Tr(rho_C^2)], applied verbatim
// to the three matrices (indexed by qubit_index()).
double global_entanglement(const std::array<ComplexMatrix2, 3>& rhos,
                           double tolerance = kMetricsTol);

TrialityReport triality_report(const std::array<ComplexMatrix2, 3>& rhos,
                               double tolerance = kMetricsTol);

struct SweepTerms {
    double v_term = 0.0;  // (1/3) sum_k V_k^2
    double p_term = 0.0;  // (1/3) sum_k P_k^2
    double q = 0.0;
};

// theta1 = theta2 = theta3 = theta:
//   v = (sin^6 + 2 sin^2)/3, p = (2 cos^4 + cos^2)/3, q = 1 - v - p.
SweepTerms analytic_sweep_case1(RotationAngle theta);

// theta1 = theta, theta2 = theta3 = 0: (0, cos^2, sin^2).
SweepTerms analytic_sweep_case2(RotationAngle theta);

}  // namespace triality
