// qcore.hpp
// Exact complex linear algebra for three-qubit pure states: basis
// conventions, single-qubit reductions, purity, density-matrix validation.

#pragma once

#include <array>
#include <complex>

namespace triality {

using Complex = std::complex<double>;

// Tolerance hierarchy: exact algebra is checked at 1e-12, preconditions
// gate at 1e-9, validation of user-supplied matrices defaults to 1e-6.
inline constexpr double kExactTol = 1e-12;
inline constexpr double kPreconditionTol = 1e-9;
inline constexpr double kValidationTol = 1e-6;

enum class QubitLabel { A = 0, B = 1, C = 2 };

inline constexpr std::array<QubitLabel, 3> kAllQubits{QubitLabel::A, QubitLabel::B,
                                                      QubitLabel::C};

constexpr int qubit_index(QubitLabel k) { return static_cast<int>(k); }

// Bit position of qubit k inside a basis index (A is the high bit).
constexpr int qubit_bit_shift(QubitLabel k) { return 2 - qubit_index(k); }

const char* qubit_name(QubitLabel k);

// Three-qubit pure state. Amplitudes are stored in lexicographic basis
// order |qA qB qC>, i.e. index = 4*qA + 2*qB + qC.
struct PureState3 {
    std::array<Complex, 8> amplitudes{};

    // |index> computational basis state, index in [0, 7]
    static PureState3 basis_state(int index);
    // scales arbitrary finite, nonzero amplitudes to unit norm
    static PureState3 normalized(const std::array<Complex, 8>& raw);

    double norm_squared() const;
    bool is_normalized(double tol = kPreconditionTol) const;
};

// 2x2 complex matrix, row-major: entry (0,0) = rho11, (0,1) = rho12,
// (1,0) = rho21, (1,1) = rho22. Also holds non-Hermitian operators;
// density-matrix checks live in validate_density_matrix().
struct ComplexMatrix2 {
    std::array<Complex, 4> entries{};

    Complex& operator()(int row, int col) { return entries[2 * row + col]; }
    const Complex& operator()(int row, int col) const { return entries[2 * row + col]; }

    static ComplexMatrix2 identity();
    static ComplexMatrix2 diagonal(double top_left, double bottom_right);
};

ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);
ComplexMatrix2 operator*(double scale, const ComplexMatrix2& m);

Complex trace(const ComplexMatrix2& m);
ComplexMatrix2 adjoint(const ComplexMatrix2& m);

// max entrywise |m - m^dagger|
double hermiticity_deviation(const ComplexMatrix2& m);

// Closed-form eigenvalues of the Hermitian part of m, ascending.
std::array<double, 2> hermitian_eigenvalues(const ComplexMatrix2& m);

struct CheckResult {
    bool ok = false;
    double deviation = 0.0;
};

// Result of the three density-matrix checks; `ok` is their conjunction.
struct ValidationResult {
    CheckResult trace_one;
    CheckResult hermitian;
    CheckResult eigenvalues_in_range;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double tolerance = kValidationTol;
    bool ok = false;
};

ValidationResult validate_density_matrix(const ComplexMatrix2& rho,
                                         double tolerance = kValidationTol);

// Reduced density matrix of qubit k (the other two traced out).
// Requires a normalized state (norm deviation <= 1e-9).
ComplexMatrix2 reduced_density_matrix(const PureState3& state, QubitLabel k);

// Tr(rho^2). Requires Hermitian input (asymmetry <= 1e-9).
double purity(const ComplexMatrix2& rho);

}  // namespace triality
