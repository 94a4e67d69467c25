#include "triality/qcore.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace triality {

const char* qubit_name(QubitLabel k) {
    switch (k) {
        case QubitLabel::A: return "A";
        case QubitLabel::B: return "B";
        case QubitLabel::C: return "C";
    }
    return "?";
}

PureState3 PureState3::basis_state(int index) {
    if (index < 0 || index > 7) {
        throw std::out_of_range("PureState3::basis_state: index must be in [0, 7]");
    }
    PureState3 state;
    state.amplitudes[static_cast<std::size_t>(index)] = Complex{1.0, 0.0};
    return state;
}

PureState3 PureState3::normalized(const std::array<Complex, 8>& raw) {
    double norm2 = 0.0;
    for (const Complex& a : raw) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("PureState3::normalized: amplitudes must be finite");
        }
        norm2 += std::norm(a);
    }
    if (norm2 <= 0.0) {
        throw std::invalid_argument("PureState3::normalized: zero vector cannot be normalized");
    }
    PureState3 state{raw};
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& a : state.amplitudes) a *= inv;
    return state;
}

double PureState3::norm_squared() const {
    double norm2 = 0.0;
    for (const Complex& a : amplitudes) norm2 += std::norm(a);
    return norm2;
}

bool PureState3::is_normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

ComplexMatrix2 ComplexMatrix2::identity() { return diagonal(1.0, 1.0); }

ComplexMatrix2 ComplexMatrix2::diagonal(double top_left, double bottom_right) {
    ComplexMatrix2 m;
    m(0, 0) = top_left;
    m(1, 1) = bottom_right;
    return m;
}

ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    ComplexMatrix2 out;
    for (std::size_t i = 0; i < 4; ++i) out.entries[i] = a.entries[i] + b.entries[i];
    return out;
}

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    ComplexMatrix2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
        }
    }
    return out;
}

ComplexMatrix2 operator*(double scale, const ComplexMatrix2& m) {
    ComplexMatrix2 out = m;
    for (Complex& e : out.entries) e *= scale;
    return out;
}

Complex trace(const ComplexMatrix2& m) { return m(0, 0) + m(1, 1); }

ComplexMatrix2 adjoint(const ComplexMatrix2& m) {
    ComplexMatrix2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out(r, c) = std::conj(m(c, r));
    }
    return out;
}

double hermiticity_deviation(const ComplexMatrix2& m) {
    double dev = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            dev = std::max(dev, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return dev;
}

std::array<double, 2> hermitian_eigenvalues(const ComplexMatrix2& m) {
    // closed form on the Hermitian part: mean +- sqrt(half_gap^2 + |off|^2)
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const Complex off = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(off));
    return {mean - radius, mean + radius};
}

ValidationResult validate_density_matrix(const ComplexMatrix2& rho, double tolerance) {
    ValidationResult result;
    result.tolerance = tolerance;

    result.trace_one.deviation = std::abs(trace(rho) - Complex{1.0, 0.0});
    result.trace_one.ok = result.trace_one.deviation <= tolerance;

    result.hermitian.deviation = hermiticity_deviation(rho);
    result.hermitian.ok = result.hermitian.deviation <= tolerance;

    const auto eigs = hermitian_eigenvalues(rho);
    result.min_eigenvalue = eigs[0];
    result.max_eigenvalue = eigs[1];
    result.eigenvalues_in_range.deviation =
        std::max({0.0, -eigs[0], eigs[1] - 1.0});
    result.eigenvalues_in_range.ok = result.eigenvalues_in_range.deviation <= tolerance;

    result.ok = result.trace_one.ok && result.hermitian.ok && result.eigenvalues_in_range.ok;
    return result;
}

ComplexMatrix2 reduced_density_matrix(const PureState3& state, QubitLabel k) {
    if (!state.is_normalized()) {
        std::ostringstream msg;
        msg << "reduced_density_matrix: state is not normalized (|norm^2 - 1| = "
            << std::abs(state.norm_squared() - 1.0) << ")";
        throw std::invalid_argument(msg.str());
    }
    const int shift = qubit_bit_shift(k);
    const int mask = 1 << shift;
    ComplexMatrix2 rho;
    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 2; ++col) {
            Complex sum{0.0, 0.0};
            for (int rest = 0; rest < 8; ++rest) {
                if (rest & mask) continue;  // rest enumerates the traced-out qubits
                sum += state.amplitudes[static_cast<std::size_t>(rest | (row << shift))] *
                       std::conj(
                           state.amplitudes[static_cast<std::size_t>(rest | (col << shift))]);
            }
            rho(row, col) = sum;
        }
    }
    return rho;
}

double purity(const ComplexMatrix2& rho) {
    const double asymmetry = hermiticity_deviation(rho);
    if (asymmetry > kPreconditionTol) {
        std::ostringstream msg;
        msg << "purity: matrix is not Hermitian (asymmetry = " << asymmetry << ")";
        throw std::invalid_argument(msg.str());
    }
    return std::real(trace(rho * rho));
}

}  // namespace triality
