#pragma once

#include <functional>
#include <vector>

#include "paulistab/freqresp.hpp"

namespace pstab {

/// One dq-frame 2x2 matrix sample: [[dd, dq], [qd, qq]].
struct DqMatrix {
    complex dd, dq, qd, qq;
};

/// Pauli quaternion sample: M = q0*I + q1*JK + q2*J + q3*K, equivalently
/// q0 + <[q1, -j*q2, q3], sigma>. Scalar part q0; q2 is the symmetric
/// (J-axis) coupling; q1 and q3 carry the mirror-frequency coupling.
struct PauliQuaternion {
    complex q0, q1, q2, q3;
};

// Linear bijection between dq matrices and quaternions.
PauliQuaternion decompose(const DqMatrix& m);
DqMatrix recompose(const PauliQuaternion& q);

PauliQuaternion q_add(const PauliQuaternion& a, const PauliQuaternion& b);
PauliQuaternion q_sub(const PauliQuaternion& a, const PauliQuaternion& b);
PauliQuaternion q_scale(complex c, const PauliQuaternion& a);

// Quaternion product matching the matrix product of the recompositions:
// L0 = Z0*Y0 + Z1*Y1 - Z2*Y2 + Z3*Y3, vector part Z0*y + Y0*z + j(z x y).
PauliQuaternion q_mul(const PauliQuaternion& z, const PauliQuaternion& y);

// Complex-valued squared semi-norm: q0^2 - q1^2 + q2^2 - q3^2 = det(recompose).
complex semi_norm_sq(const PauliQuaternion& q);

// |q(jw)|^2 as |semi_norm_sq|; real and >= 0, branch-free.
double magnitude_sq(const PauliQuaternion& q);

// Inverse w.r.t. q_mul. Throws SingularQuaternion when |semi_norm_sq| is
// below 1e-14 of the largest squared coefficient.
PauliQuaternion q_inverse(const PauliQuaternion& q);

// d/q component extractors as quaternion constants (Re = (I+K)/2, Im = J(K-I)/2).
PauliQuaternion re_operator();
PauliQuaternion im_operator();

// Positive/negative-sequence CTF pair of a quaternion sample.
complex ctf_positive(const PauliQuaternion& q); // Q0 + j*Q2
complex ctf_negative(const PauliQuaternion& q); // Q3 + j*Q1

/// Evaluable map s -> PauliQuaternion. Composes pointwise; pure and
/// thread-safe, so sweeps may evaluate one element from many threads.
class QuaternionElement {
  public:
    using Fn = std::function<PauliQuaternion(complex)>;

    QuaternionElement() = default;
    explicit QuaternionElement(Fn fn) : fn_(std::move(fn)) {}

    static QuaternionElement constant(PauliQuaternion q);
    static QuaternionElement scalar(TransferElement h); // (h(s), 0, 0, 0)

    // Lookup-table element over jw samples; eval requires s = j*omega with
    // omega present in the table (relative tolerance 1e-9).
    static QuaternionElement tabulated(std::vector<double> omega,
                                       std::vector<PauliQuaternion> samples);

    PauliQuaternion evaluate(complex s) const;
    bool valid() const { return static_cast<bool>(fn_); }

    QuaternionElement inverse() const;
    QuaternionElement scaled(complex c) const;

    friend QuaternionElement operator+(const QuaternionElement& a, const QuaternionElement& b);
    friend QuaternionElement operator-(const QuaternionElement& a, const QuaternionElement& b);
    friend QuaternionElement operator*(const QuaternionElement& a, const QuaternionElement& b);

  private:
    Fn fn_;
};

// Matrix equivalent of the frequency shift s -> s*I + J*w1 applied to a
// scalar element h: Q0(s) = (h(s+jw1)+h(s-jw1))/2, Q2(s) = (h(s+jw1)-h(s-jw1))/(2j).
QuaternionElement frequency_shift(TransferElement h, double w1);

} // namespace pstab
