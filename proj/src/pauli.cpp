#include "paulistab/pauli.hpp"

#include <algorithm>
#include <cmath>

namespace pstab {

PauliQuaternion decompose(const DqMatrix& m) {
    return {(m.dd + m.qq) / 2.0, (m.qd + m.dq) / 2.0,
            (m.qd - m.dq) / 2.0, (m.dd - m.qq) / 2.0};
}

DqMatrix recompose(const PauliQuaternion& q) {
    return {q.q0 + q.q3, q.q1 - q.q2, q.q1 + q.q2, q.q0 - q.q3};
}

PauliQuaternion q_add(const PauliQuaternion& a, const PauliQuaternion& b) {
    return {a.q0 + b.q0, a.q1 + b.q1, a.q2 + b.q2, a.q3 + b.q3};
}

PauliQuaternion q_sub(const PauliQuaternion& a, const PauliQuaternion& b) {
    return {a.q0 - b.q0, a.q1 - b.q1, a.q2 - b.q2, a.q3 - b.q3};
}

PauliQuaternion q_scale(complex c, const PauliQuaternion& a) {
    return {c * a.q0, c * a.q1, c * a.q2, c * a.q3};
}

PauliQuaternion q_mul(const PauliQuaternion& z, const PauliQuaternion& y) {
    return {z.q0 * y.q0 + z.q1 * y.q1 - z.q2 * y.q2 + z.q3 * y.q3,
            z.q0 * y.q1 + z.q1 * y.q0 + z.q2 * y.q3 - z.q3 * y.q2,
            z.q0 * y.q2 + z.q2 * y.q0 + z.q1 * y.q3 - z.q3 * y.q1,
            z.q0 * y.q3 + z.q3 * y.q0 + z.q1 * y.q2 - z.q2 * y.q1};
}

complex semi_norm_sq(const PauliQuaternion& q) {
    return q.q0 * q.q0 - q.q1 * q.q1 + q.q2 * q.q2 - q.q3 * q.q3;
}

double magnitude_sq(const PauliQuaternion& q) {
    return std::abs(semi_norm_sq(q));
}

PauliQuaternion q_inverse(const PauliQuaternion& q) {
    const complex sns = semi_norm_sq(q);
    const double scale = std::max({std::norm(q.q0), std::norm(q.q1),
                                   std::norm(q.q2), std::norm(q.q3)});
    if (std::abs(sns) <= 1e-14 * scale || scale == 0.0)
        throw SingularQuaternion("q_inverse: semi-norm vanishes (singular dq matrix)");
    const complex inv = 1.0 / sns;
    return {q.q0 * inv, -q.q1 * inv, -q.q2 * inv, -q.q3 * inv};
}

PauliQuaternion re_operator() {
    return {0.5, 0.0, 0.0, 0.5};
}

PauliQuaternion im_operator() {
    return {0.0, 0.5, -0.5, 0.0};
}

complex ctf_positive(const PauliQuaternion& q) {
    return q.q0 + complex(0.0, 1.0) * q.q2;
}

complex ctf_negative(const PauliQuaternion& q) {
    return q.q3 + complex(0.0, 1.0) * q.q1;
}

QuaternionElement QuaternionElement::constant(PauliQuaternion q) {
    return QuaternionElement([q](complex) { return q; });
}

QuaternionElement QuaternionElement::scalar(TransferElement h) {
    return QuaternionElement([h = std::move(h)](complex s) {
        return PauliQuaternion{h.evaluate(s), 0.0, 0.0, 0.0};
    });
}

QuaternionElement QuaternionElement::tabulated(std::vector<double> omega,
                                               std::vector<PauliQuaternion> samples) {
    if (omega.size() != samples.size() || omega.empty())
        throw InvalidRange("tabulated: omega/sample size mismatch");
    auto table = std::make_shared<std::pair<std::vector<double>, std::vector<PauliQuaternion>>>(
        std::move(omega), std::move(samples));
    return QuaternionElement([table](complex s) {
        if (s.real() != 0.0)
            throw InvalidRange("tabulated element is only defined on the jw axis");
        const auto& [ws, qs] = *table;
        const double w = s.imag();
        auto it = std::lower_bound(ws.begin(), ws.end(), w);
        for (auto cand : {it, it == ws.begin() ? it : std::prev(it)}) {
            if (cand != ws.end() && std::abs(*cand - w) <= 1e-9 * std::max(1.0, std::abs(w)))
                return qs[static_cast<std::size_t>(cand - ws.begin())];
        }
        throw InvalidRange("tabulated element has no sample at the requested frequency");
    });
}

PauliQuaternion QuaternionElement::evaluate(complex s) const {
    return fn_(s);
}

QuaternionElement QuaternionElement::inverse() const {
    return QuaternionElement(
        [f = fn_](complex s) { return q_inverse(f(s)); });
}

QuaternionElement QuaternionElement::scaled(complex c) const {
    return QuaternionElement(
        [f = fn_, c](complex s) { return q_scale(c, f(s)); });
}

QuaternionElement operator+(const QuaternionElement& a, const QuaternionElement& b) {
    return QuaternionElement(
        [fa = a.fn_, fb = b.fn_](complex s) { return q_add(fa(s), fb(s)); });
}

QuaternionElement operator-(const QuaternionElement& a, const QuaternionElement& b) {
    return QuaternionElement(
        [fa = a.fn_, fb = b.fn_](complex s) { return q_sub(fa(s), fb(s)); });
}

QuaternionElement operator*(const QuaternionElement& a, const QuaternionElement& b) {
    return QuaternionElement(
        [fa = a.fn_, fb = b.fn_](complex s) { return q_mul(fa(s), fb(s)); });
}

QuaternionElement frequency_shift(TransferElement h, double w1) {
    const complex jw1(0.0, w1);
    return QuaternionElement([h = std::move(h), jw1](complex s) {
        const complex hp = h.evaluate(s + jw1);
        const complex hm = h.evaluate(s - jw1);
        return PauliQuaternion{(hp + hm) / 2.0, 0.0,
                               (hp - hm) / complex(0.0, 2.0), 0.0};
    });
}

} // namespace pstab
