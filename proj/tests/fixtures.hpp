// fixtures.hpp
// Frozen regression fixtures from a superconducting-device tomography run
// of the theta = (pi/4, pi/6, pi/8) state at 10000 shots per operator: raw
// counts per qubit, the matrices they reconstruct to via linear inversion,
// and the metrics computed from those matrices (4-decimal rounding).

#pragma once

#include <array>
#include <cstdint>

#include "triality/qcore.hpp"
#include "triality/tomography.hpp"

namespace triality::testing {

inline constexpr std::int64_t kDeviceShots = 10000;

// indexed by qubit_index(): A, B, C
inline std::array<TomographyCounts, 3> device_counts() {
    return {TomographyCounts{5000, 8252, 4411, 4989, kDeviceShots},
            TomographyCounts{5000, 7743, 2729, 4951, kDeviceShots},
            TomographyCounts{5000, 7740, 3196, 4941, kDeviceShots}};
}

inline ComplexMatrix2 device_rho(int qubit) {
    ComplexMatrix2 rho;
    switch (qubit) {
        case 0:
            rho(0, 0) = 0.8252;
            rho(0, 1) = Complex{0.0589, -0.0011};
            rho(1, 1) = 0.1748;
            break;
        case 1:
            rho(0, 0) = 0.7743;
            rho(0, 1) = Complex{0.2271, -0.0049};
            rho(1, 1) = 0.2257;
            break;
        default:
            rho(0, 0) = 0.7740;
            rho(0, 1) = Complex{0.1804, -0.0059};
            rho(1, 1) = 0.2260;
            break;
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

inline std::array<ComplexMatrix2, 3> device_rhos() {
    return {device_rho(0), device_rho(1), device_rho(2)};
}

inline constexpr std::array<double, 3> kDeviceVisibility{0.1178, 0.4543, 0.3610};
inline constexpr std::array<double, 3> kDevicePredictability{0.6504, 0.5486, 0.5480};
inline constexpr double kDeviceQ = 0.5420;
inline constexpr double kDeviceTrialitySum = 1.0003;  // arises from 4-decimal rounding

}  // namespace triality::testing
