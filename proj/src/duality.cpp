#include "triality/duality.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace triality {

namespace {

void require_valid(const ComplexMatrix2& rho, double tolerance, const char* where) {
    const ValidationResult v = validate_density_matrix(rho, tolerance);
    if (v.ok) return;
    std::ostringstream msg;
    msg << where << ": invalid density matrix at tolerance " << tolerance << " (";
    msg << "trace dev " << v.trace_one.deviation;
    msg << ", hermiticity dev " << v.hermitian.deviation;
    msg << ", eigenvalue dev " << v.eigenvalues_in_range.deviation << ")";
    throw std::invalid_argument(msg.str());
}

}  // namespace

double visibility(const ComplexMatrix2& rho, double tolerance) {
    require_valid(rho, tolerance, "visibility");
    return 2.0 * std::abs(rho(0, 1));
}

double predictability(const ComplexMatrix2& rho, double tolerance) {
    require_valid(rho, tolerance, "predictability");
    return std::abs(rho(1, 1).real() - rho(0, 0).real());
}

double global_entanglement(const std::array<ComplexMatrix2, 3>& rhos, double tolerance) {
    double purity_sum = 0.0;
    for (const ComplexMatrix2& rho : rhos) {
        require_valid(rho, tolerance, "global_entanglement");
        purity_sum += std::real(trace(rho * rho));
    }
    return (2.0 / 3.0) * (3.0 - purity_sum);
}

TrialityReport triality_report(const std::array<ComplexMatrix2, 3>& rhos,
                               double tolerance) {
    TrialityReport report;
    double v_squared_sum = 0.0;
    double p_squared_sum = 0.0;
    for (std::size_t i = 0; i < rhos.size(); ++i) {
        const double v = visibility(rhos[i], tolerance);
        const double p = predictability(rhos[i], tolerance);
        report.per_qubit[i] = DualityMetrics{v, p};
        v_squared_sum += v * v;
        p_squared_sum += p * p;
    }
    report.q_global = global_entanglement(rhos, tolerance);
    report.mean_v_squared = v_squared_sum / 3.0;
    report.mean_p_squared = p_squared_sum / 3.0;
    report.triality_sum = report.q_global + report.mean_v_squared + report.mean_p_squared;
    return report;
}

SweepTerms analytic_sweep_case1(RotationAngle theta) {
    const double s = std::sin(theta.radians);
    const double c = std::cos(theta.radians);
    const double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
    const double c2 = c * c, c4 = c2 * c2;
    SweepTerms terms;
    terms.v_term = (s6 + 2.0 * s2) / 3.0;
    terms.p_term = (2.0 * c4 + c2) / 3.0;
    terms.q = -(s6 + 2.0 * s4 - 3.0 * s2) / 3.0;
    return terms;
}

SweepTerms analytic_sweep_case2(RotationAngle theta) {
    const double s = std::sin(theta.radians);
    const double c = std::cos(theta.radians);
    return SweepTerms{0.0, c * c, s * s};
}

}  // namespace triality
