// tomography.hpp
// Shot-based single-qubit state tomography: the four-operator measurement
// set, seeded count simulation, Stokes parameters, and linear-inversion
// reconstruction.

#pragma once

#include <cstdint>
#include <utility>

#include "triality/qcore.hpp"

namespace triality {

// mu0 = |0><0| + |1><1|, mu1 = |0><0|, mu2 = |-><-|, mu3 = |R><R|
// with |-> = (|0> - |1>)/sqrt(2) and |R> = (|0> - i|1>)/sqrt(2).
enum class MeasurementId { Mu0 = 0, Mu1 = 1, Mu2 = 2, Mu3 = 3 };

inline constexpr std::array<MeasurementId, 4> kAllMeasurements{
    MeasurementId::Mu0, MeasurementId::Mu1, MeasurementId::Mu2, MeasurementId::Mu3};

// Fixed, bit-exact operator matrices for the set above.
ComplexMatrix2 measurement_matrix(MeasurementId id);

// Event counts for one qubit's measurement set; shots is the per-operator
// budget N. n0 is always shots/2 when produced by simulate_counts.
struct TomographyCounts {
    std::int64_t n0 = 0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
    std::int64_t n3 = 0;
    std::int64_t shots = 0;
};

struct StokesVector {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

// Optional device emulation; both probabilities default to 0 (ideal).
struct NoiseConfig {
    double readout_flip_probability = 0.0;
    double depolarizing_probability = 0.0;
};

// Tr(mu * rho); exactly 1 for Mu0. Rejects invalid density matrices.
double outcome_probability(const ComplexMatrix2& rho, MeasurementId op);

// Draws n1..n3 as independent binomials over `shots` trials each; n0 is
// fixed at shots/2 because mu0 is the identity. Operator mu_i samples from
// mt19937_64(derive_seed(seed, i)), so identical (rho, shots, noise, seed)
// give identical counts bit-for-bit. shots must be positive and even.
TomographyCounts simulate_counts(const ComplexMatrix2& rho, std::int64_t shots,
                                 const NoiseConfig& noise, std::uint64_t seed);

// (2n0, 2(n1-n0), 2(n2-n0), 2(n3-n0)), exact integer arithmetic.
StokesVector stokes_from_counts(const TomographyCounts& counts);

// Linear inversion: rho11 = (1 + S1/S0)/2, Re rho12 = -S2/(2 S0),
// Im rho12 = S3/(2 S0), rho22 = 1 - rho11. Hermitian with unit trace by
// construction; may be non-physical under shot noise (an eigenvalue
// slightly outside [0,1]) -- validate_density_matrix flags that, nothing
// here clips it. Requires S0 > 0.
ComplexMatrix2 reconstruct(const StokesVector& stokes);

struct TomographyResult {
    TomographyCounts counts;
    ComplexMatrix2 rho;
};

// reduced_density_matrix -> simulate_counts -> stokes_from_counts ->
// reconstruct, returning both the raw counts and the reconstruction.
TomographyResult tomograph_qubit(const PureState3& state, QubitLabel k,
                                 std::int64_t shots, const NoiseConfig& noise,
                                 std::uint64_t seed);

}  // namespace triality
