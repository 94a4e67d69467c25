#include "triality/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace triality {

namespace {

void require_finite(RotationAngle angle, const char* where) {
    if (!std::isfinite(angle.radians)) {
        throw std::invalid_argument(std::string(where) + ": angle must be finite");
    }
}

void require_normalized(const PureState3& state, const char* where) {
    if (!state.is_normalized()) {
        std::ostringstream msg;
        msg << where << ": state is not normalized (|norm^2 - 1| = "
            << std::abs(state.norm_squared() - 1.0) << ")";
        throw std::invalid_argument(msg.str());
    }
}

PureState3 apply_ry(const PureState3& state, const RyGate& gate) {
    const double c = std::cos(0.5 * gate.angle.radians);
    const double s = std::sin(0.5 * gate.angle.radians);
    const int mask = 1 << qubit_bit_shift(gate.target);
    PureState3 out = state;
    for (int i = 0; i < 8; ++i) {
        if (i & mask) continue;
        const Complex lo = state.amplitudes[static_cast<std::size_t>(i)];
        const Complex hi = state.amplitudes[static_cast<std::size_t>(i | mask)];
        out.amplitudes[static_cast<std::size_t>(i)] = c * lo - s * hi;
        out.amplitudes[static_cast<std::size_t>(i | mask)] = s * lo + c * hi;
    }
    return out;
}

PureState3 apply_cnot(const PureState3& state, const CnotGate& gate) {
    const int control_mask = 1 << qubit_bit_shift(gate.control);
    const int target_mask = 1 << qubit_bit_shift(gate.target);
    PureState3 out = state;
    for (int i = 0; i < 8; ++i) {
        if ((i & control_mask) && !(i & target_mask)) {
            std::swap(out.amplitudes[static_cast<std::size_t>(i)],
                      out.amplitudes[static_cast<std::size_t>(i | target_mask)]);
        }
    }
    return out;
}

}  // namespace

Gate make_ry(QubitLabel target, RotationAngle angle) {
    require_finite(angle, "make_ry");
    return RyGate{target, angle};
}

Gate make_cnot(QubitLabel control, QubitLabel target) {
    if (control == target) {
        throw std::invalid_argument("make_cnot: control and target must differ");
    }
    return CnotGate{control, target};
}

PureState3 apply_gate(const PureState3& state, const Gate& gate) {
    require_normalized(state, "apply_gate");
    return std::visit(
        [&state](const auto& g) -> PureState3 {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, RyGate>) {
                return apply_ry(state, g);
            } else {
                return apply_cnot(state, g);
            }
        },
        gate);
}

PureState3 apply_circuit(const PureState3& state, const Circuit& circuit) {
    PureState3 out = state;
    for (const Gate& gate : circuit.gates) out = apply_gate(out, gate);
    return out;
}

Circuit preparation_circuit(RotationAngle theta1, RotationAngle theta2,
                            RotationAngle theta3) {
    Circuit circuit;
    circuit.gates.push_back(make_ry(QubitLabel::A, theta1));
    circuit.gates.push_back(make_ry(QubitLabel::B, theta2));
    circuit.gates.push_back(make_ry(QubitLabel::C, theta3));
    circuit.gates.push_back(make_cnot(QubitLabel::A, QubitLabel::B));
    circuit.gates.push_back(make_cnot(QubitLabel::A, QubitLabel::C));
    return circuit;
}

PureState3 prepare_theta_state(RotationAngle theta1, RotationAngle theta2,
                               RotationAngle theta3) {
    return apply_circuit(PureState3::basis_state(0),
                         preparation_circuit(theta1, theta2, theta3));
}

PureState3 theta_state_formula(RotationAngle theta1, RotationAngle theta2,
                               RotationAngle theta3) {
    require_finite(theta1, "theta_state_formula");
    require_finite(theta2, "theta_state_formula");
    require_finite(theta3, "theta_state_formula");
    const double c1 = std::cos(0.5 * theta1.radians), s1 = std::sin(0.5 * theta1.radians);
    const double c2 = std::cos(0.5 * theta2.radians), s2 = std::sin(0.5 * theta2.radians);
    const double c3 = std::cos(0.5 * theta3.radians), s3 = std::sin(0.5 * theta3.radians);
    PureState3 state;
    state.amplitudes[0] = c1 * c2 * c3;  // |000>
    state.amplitudes[1] = c1 * c2 * s3;  // |001>
    state.amplitudes[2] = c1 * s2 * c3;  // |010>
    state.amplitudes[3] = c1 * s2 * s3;  // |011>
    state.amplitudes[4] = s1 * s2 * s3;  // |100>
    state.amplitudes[5] = s1 * s2 * c3;  // |101>
    state.amplitudes[6] = s1 * c2 * s3;  // |110>
    state.amplitudes[7] = s1 * c2 * c3;  // |111>
    return state;
}

}  // namespace triality
