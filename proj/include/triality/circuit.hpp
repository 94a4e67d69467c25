// circuit.hpp
// Gates on three-qubit states and preparation of the three-parameter
// Ry/CNOT state family from |000>.

#pragma once

#include <variant>
#include <vector>

#include "triality/qcore.hpp"

namespace triality {

struct RotationAngle {
    double radians = 0.0;
};

// Ry(theta) acts as [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
// on the target qubit's tensor factor.
struct RyGate {
    QubitLabel target;
    RotationAngle angle;
};

// Flips target iff control is |1>.
struct CnotGate {
    QubitLabel control;
    QubitLabel target;
};

using Gate = std::variant<RyGate, CnotGate>;

Gate make_ry(QubitLabel target, RotationAngle angle);
Gate make_cnot(QubitLabel control, QubitLabel target);  // control != target

struct Circuit {
    std::vector<Gate> gates;  // applied left-to-right
};

// Applies one gate via index-pair updates on the 8-vector; norm-preserving.
PureState3 apply_gate(const PureState3& state, const Gate& gate);
PureState3 apply_circuit(const PureState3& state, const Circuit& circuit);

// [Ry(t1) on A, Ry(t2) on B, Ry(t3) on C, CNOT(A->B), CNOT(A->C)]
Circuit preparation_circuit(RotationAngle theta1, RotationAngle theta2, RotationAngle theta3);

// Canonical path: composes preparation_circuit onto |000>.
PureState3 prepare_theta_state(RotationAngle theta1, RotationAngle theta2,
                               RotationAngle theta3);

// Closed-form amplitudes of the same family. Kept as an independent route
// so the two can be cross-checked against each other.
PureState3 theta_state_formula(RotationAngle theta1, RotationAngle theta2,
                               RotationAngle theta3);

}  // namespace triality
