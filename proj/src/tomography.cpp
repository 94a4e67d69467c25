#include "triality/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "triality/rng.hpp"

namespace triality {

namespace {

void require_density_matrix(const ComplexMatrix2& rho, const char* where) {
    const ValidationResult v = validate_density_matrix(rho);
    if (v.ok) return;
    std::ostringstream msg;
    msg << where << ": invalid density matrix (";
    msg << "trace dev " << v.trace_one.deviation;
    msg << ", hermiticity dev " << v.hermitian.deviation;
    msg << ", eigenvalue dev " << v.eigenvalues_in_range.deviation << ")";
    throw std::invalid_argument(msg.str());
}

void require_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "simulate_counts: " << name << " must lie in [0, 1], got " << p;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ComplexMatrix2 measurement_matrix(MeasurementId id) {
    ComplexMatrix2 m;
    switch (id) {
        case MeasurementId::Mu0:
            return ComplexMatrix2::identity();
        case MeasurementId::Mu1:
            return ComplexMatrix2::diagonal(1.0, 0.0);
        case MeasurementId::Mu2:
            m(0, 0) = 0.5;
            m(0, 1) = -0.5;
            m(1, 0) = -0.5;
            m(1, 1) = 0.5;
            return m;
        case MeasurementId::Mu3:
            m(0, 0) = 0.5;
            m(0, 1) = Complex{0.0, 0.5};
            m(1, 0) = Complex{0.0, -0.5};
            m(1, 1) = 0.5;
            return m;
    }
    throw std::invalid_argument("measurement_matrix: unknown operator id");
}

double outcome_probability(const ComplexMatrix2& rho, MeasurementId op) {
    require_density_matrix(rho, "outcome_probability");
    if (op == MeasurementId::Mu0) return 1.0;  // identity operator
    return std::real(trace(measurement_matrix(op) * rho));
}

TomographyCounts simulate_counts(const ComplexMatrix2& rho, std::int64_t shots,
                                 const NoiseConfig& noise, std::uint64_t seed) {
    require_density_matrix(rho, "simulate_counts");
    if (shots <= 0 || shots % 2 != 0) {
        throw std::invalid_argument("simulate_counts: shots must be a positive even integer");
    }
    require_probability(noise.readout_flip_probability, "readout_flip_probability");
    require_probability(noise.depolarizing_probability, "depolarizing_probability");

    TomographyCounts counts;
    counts.shots = shots;
    counts.n0 = shots / 2;  // mu0 is the identity: n0 = N/2 * Tr(rho), fixed analytically

    const std::array<MeasurementId, 3> sampled{MeasurementId::Mu1, MeasurementId::Mu2,
                                               MeasurementId::Mu3};
    const std::array<std::int64_t*, 3> slots{&counts.n1, &counts.n2, &counts.n3};
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        double q = outcome_probability(rho, sampled[i]);
        // depolarizing rho -> (1-p) rho + p I/2 shifts every success
        // probability toward 1/2 (each sampled operator has unit trace)
        q = (1.0 - noise.depolarizing_probability) * q +
            0.5 * noise.depolarizing_probability;
        const double flip = noise.readout_flip_probability;
        q = (1.0 - flip) * q + flip * (1.0 - q);
        q = std::clamp(q, 0.0, 1.0);
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(i + 1)));
        *slots[i] = binomial_sample(rng, shots, q);
    }
    return counts;
}

StokesVector stokes_from_counts(const TomographyCounts& counts) {
    StokesVector stokes;
    stokes.s0 = static_cast<double>(2 * counts.n0);
    stokes.s1 = static_cast<double>(2 * (counts.n1 - counts.n0));
    stokes.s2 = static_cast<double>(2 * (counts.n2 - counts.n0));
    stokes.s3 = static_cast<double>(2 * (counts.n3 - counts.n0));
    return stokes;
}

ComplexMatrix2 reconstruct(const StokesVector& stokes) {
    if (!(stokes.s0 > 0.0)) {
        std::ostringstream msg;
        msg << "reconstruct: S0 must be positive, got " << stokes.s0;
        throw std::invalid_argument(msg.str());
    }
    const double rho11 = 0.5 * (1.0 + stokes.s1 / stokes.s0);
    const double re12 = -0.5 * (stokes.s2 / stokes.s0);
    const double im12 = 0.5 * (stokes.s3 / stokes.s0);
    ComplexMatrix2 rho;
    rho(0, 0) = rho11;
    rho(0, 1) = Complex{re12, im12};
    rho(1, 0) = Complex{re12, -im12};
    rho(1, 1) = 1.0 - rho11;
    return rho;
}

TomographyResult tomograph_qubit(const PureState3& state, QubitLabel k,
                                 std::int64_t shots, const NoiseConfig& noise,
                                 std::uint64_t seed) {
    TomographyResult result;
    const ComplexMatrix2 rho = reduced_density_matrix(state, k);
    result.counts = simulate_counts(rho, shots, noise, seed);
    result.rho = reconstruct(stokes_from_counts(result.counts));
    return result;
}

}  // namespace triality
