#pragma once

#include <vector>

#include "paulistab/models.hpp"
#include "paulistab/pauli.hpp"

namespace pstab {
namespace oracle {

// Closed-form 2x2 complex matrix algebra, independent of the quaternion path.
complex matrix_det2(const DqMatrix& m);
complex matrix_trace2(const DqMatrix& m);
DqMatrix matrix_mul2(const DqMatrix& a, const DqMatrix& b);
// Throws SingularMatrix when |det| <= 1e-14 * max|entry|^2.
DqMatrix matrix_inv2(const DqMatrix& m);
// Cancellation-safe quadratic roots of lambda^2 - tr lambda + det.
std::pair<complex, complex> matrix_eig2(const DqMatrix& m);

// Diagonal Pade approximant of exp(-s*Td), default order 4.
TransferElement pade_delay(double Td, int order);

/// Real state-space model x' = A x + B u, y = C x + D u (row-major storage).
struct StateSpaceModel {
    int n = 0, m = 0, p = 0;
    std::vector<double> A, B, C, D;
    double& a(int i, int j) { return A[static_cast<std::size_t>(i) * n + j]; }
    double& b(int i, int j) { return B[static_cast<std::size_t>(i) * m + j]; }
    double& c(int i, int j) { return C[static_cast<std::size_t>(i) * n + j]; }
    double& d(int i, int j) { return D[static_cast<std::size_t>(i) * m + j]; }
    void validate() const; // throws AssemblyError on inconsistent dimensions
};

// Linearized closed loop (converter + grid in dq coordinates) with the
// delay replaced by a Pade rational. Input: PCC-source perturbation.
StateSpaceModel assemble_closed_loop(const ConverterParams& p, const GridParams& g,
                                     int pade_order);

// Eigenvalues of the assembled closed-loop state matrix. Each returned pair
// satisfies ||A v - lambda v|| <= 1e-8 ||A||.
std::vector<complex> closed_loop_eigs(const ConverterParams& p, const GridParams& g,
                                      int pade_order = 4);

// Eigenvalues of the passive grid alone (source shorted, converter removed).
std::vector<complex> grid_only_eigs(const GridParams& g, double w1);

} // namespace oracle
} // namespace pstab
