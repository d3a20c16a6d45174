#include "paulistab/models.hpp"

#include <cmath>

namespace pstab {

namespace {

constexpr double kPllTuningRefHz = 330.0;

// Quaternion of a static complex gain c: c.re*I + c.im*J.
PauliQuaternion static_gain(complex c) {
    return {c.real(), 0.0, c.imag(), 0.0};
}

} // namespace

void validate(const ConverterParams& p) {
    if (!(p.L > 0.0)) throw ValidationError("L must be > 0");
    if (p.Td < 0.0) throw ValidationError("Td must be >= 0");
    if (!(p.v1 > 0.0)) throw ValidationError("v1 must be > 0");
    if (!(p.w1 > 0.0)) throw ValidationError("omega1 must be > 0");
    if (p.R < 0.0) throw ValidationError("R must be >= 0");
}

void validate(const GridParams& g) {
    if (!(g.Lg > 0.0)) throw ValidationError("Lg must be > 0");
    if (!(g.Cg > 0.0)) throw ValidationError("Cg must be > 0");
    if (g.Rg < 0.0) throw ValidationError("Rg must be >= 0");
}

QuaternionElement filter_impedance(const ConverterParams& p) {
    return frequency_shift(TransferElement::rational({p.L, p.R}, {1.0}), p.w1);
}

QuaternionElement delay_model(const ConverterParams& p) {
    return frequency_shift(TransferElement::delay(p.Td), p.w1);
}

TransferElement cc_tf(const ConverterParams& p) {
    return TransferElement::rational({p.kp_cc, p.ki_cc}, {1.0, 0.0});
}

QuaternionElement cc_impedance(const ConverterParams& p) {
    const double w1L = p.w1 * p.L;
    auto cc = cc_tf(p);
    return delay_model(p) *
           QuaternionElement([cc = std::move(cc), w1L](complex s) {
               return PauliQuaternion{cc.evaluate(s), 0.0, -w1L, 0.0};
           });
}

TransferElement pll_tf(const ConverterParams& p) {
    // (kp s + ki) / (s^2 + v1 kp s + v1 ki)
    return TransferElement::rational({p.kp_pll, p.ki_pll},
                                     {1.0, p.v1 * p.kp_pll, p.v1 * p.ki_pll});
}

namespace {

// Shared tail of the two PLL-coupling paths: (J * PLL(s)) * Im.
QuaternionElement j_pll_im(const ConverterParams& p) {
    auto pll = pll_tf(p);
    const PauliQuaternion j_mat{0.0, 0.0, 1.0, 0.0};
    const PauliQuaternion im = im_operator();
    const PauliQuaternion tail = q_mul(j_mat, im);
    return QuaternionElement([pll = std::move(pll), tail](complex s) {
        return q_scale(pll.evaluate(s), tail);
    });
}

} // namespace

QuaternionElement pll_admittance_path(const ConverterParams& p, const OperatingPoint& op) {
    const PauliQuaternion u1 = static_gain({op.u1_d, op.u1_q});
    return delay_model(p) * QuaternionElement::constant(u1) * j_pll_im(p);
}

QuaternionElement cc_pll_cross_path(const ConverterParams& p, const OperatingPoint& op) {
    const PauliQuaternion i1 = static_gain({op.i1_d, op.i1_q});
    auto cc = cc_tf(p);
    auto cc_elem = QuaternionElement([cc = std::move(cc)](complex s) {
        return PauliQuaternion{cc.evaluate(s), 0.0, 0.0, 0.0};
    });
    return delay_model(p) * cc_elem * QuaternionElement::constant(i1) * j_pll_im(p);
}

QuaternionElement feedforward_path(const ConverterParams& p) {
    return delay_model(p);
}

AdmittanceParts converter_admittance(const ConverterParams& p, const OperatingPoint& op,
                                     const PathToggles& toggles) {
    validate(p);
    const auto zero = QuaternionElement::constant({0.0, 0.0, 0.0, 0.0});
    const auto one = QuaternionElement::constant({1.0, 0.0, 0.0, 0.0});

    auto y_o = (filter_impedance(p) + cc_impedance(p)).inverse();
    auto g_ff = toggles.ff ? feedforward_path(p) : zero;
    auto g_pll = toggles.pll ? pll_admittance_path(p, op) : zero;
    auto g_cc = toggles.cc_cross ? cc_pll_cross_path(p, op) : zero;

    AdmittanceParts parts;
    parts.y_o = y_o;
    parts.y_ff = y_o * g_ff;
    parts.y_pll = y_o * g_pll;
    parts.y_cc = y_o * g_cc;
    // Single-inversion form (Z_f + Z_cc)^{-1} (-I + G_ff + G_pll + G_cc);
    // the component split above must sum to the same element.
    parts.y_total = y_o * (zero - one + g_ff + g_pll + g_cc);
    return parts;
}

TransferElement grid_impedance_scalar(const GridParams& g) {
    // [(Rg + s Lg)^{-1} + s Cg]^{-1} written as one rational so evaluation
    // stays finite at the zeros of (Rg + s Lg).
    return TransferElement::rational({g.Lg, g.Rg},
                                     {g.Cg * g.Lg, g.Cg * g.Rg, 1.0});
}

QuaternionElement grid_impedance(const GridParams& g, double w1) {
    validate(g);
    return frequency_shift(grid_impedance_scalar(g), w1);
}

OperatingPoint solve_operating_point(const ConverterParams& p, const GridParams& g) {
    validate(p);
    validate(g);
    const complex j(0.0, 1.0);
    const complex zg1 = g.Rg + j * p.w1 * g.Lg;
    const complex i1(p.i1_d, p.i1_q);
    // KCL at the PCC: (Vg - Vc)/zg1 + I1 = Vc * j w1 Cg with |Vg| = v1 and
    // Vc real (PLL frame). Eliminating Vg: Vg = Vc*A - B, then |Vg| = v1
    // gives a real quadratic in Vc; the high-voltage root is the operating point.
    const complex A = 1.0 + j * p.w1 * g.Cg * zg1;
    const complex B = zg1 * i1;
    const double a = std::norm(A);
    const double b = -2.0 * (A * std::conj(B)).real();
    const double c = std::norm(B) - p.v1 * p.v1;
    if (a <= 0.0)
        throw Unsolvable("operating point: PCC node admittance singular at w1");
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw Unsolvable("operating point: no real PCC voltage satisfies |Vg| = V1");
    const double vc = (-b + std::sqrt(disc)) / (2.0 * a);
    if (!(vc > 0.0))
        throw Unsolvable("operating point: no positive PCC voltage solution");
    const complex u1 = vc + (p.R + j * p.w1 * p.L) * i1;
    OperatingPoint op;
    op.vc_d = vc;
    op.vc_q = 0.0;
    op.u1_d = u1.real();
    op.u1_q = u1.imag();
    op.i1_d = p.i1_d;
    op.i1_q = p.i1_q;
    return op;
}

ConverterParams retune_pll_bandwidth(const ConverterParams& p, double f_bw_hz) {
    if (!(f_bw_hz > 0.0))
        throw InvalidRange("retune_pll_bandwidth: bandwidth must be > 0");
    const double ratio = f_bw_hz / kPllTuningRefHz;
    ConverterParams out = p;
    out.kp_pll = p.kp_pll * ratio;
    out.ki_pll = p.ki_pll * ratio * ratio;
    return out;
}

} // namespace pstab
