#pragma once

#include "paulistab/pauli.hpp"

namespace pstab {

/// Converter-side parameters. w1 is the synchronous angular frequency in
/// rad/s; the rest use plain SI units.
struct ConverterParams {
    double v1 = 0.0;     // grid source amplitude [V]
    double w1 = 0.0;     // rad/s
    double L = 0.0;      // filter inductance [H]
    double R = 0.0;      // filter resistance [Ohm]
    double Td = 0.0;     // lumped control delay [s]
    double kp_cc = 0.0;  // current controller P [Ohm]
    double ki_cc = 0.0;  // current controller I [Ohm/s]
    double kp_pll = 0.0; // PLL P [rad/s]
    double ki_pll = 0.0; // PLL I [rad/s^2]
    double i1_d = 0.0;   // injected current, d axis [A]
    double i1_q = 0.0;   // injected current, q axis [A]
};

struct GridParams {
    double Lg = 0.0; // series inductance [H]
    double Cg = 0.0; // shunt capacitance [F]
    double Rg = 0.0; // series resistance [Ohm]
};

/// Steady state in the PLL-aligned frame (Vc_q = 0 by construction).
struct OperatingPoint {
    double u1_d = 0.0, u1_q = 0.0; // converter output voltage [V]
    double vc_d = 0.0, vc_q = 0.0; // PCC voltage [V]
    double i1_d = 0.0, i1_q = 0.0; // injected current [A]
};

void validate(const ConverterParams& p);
void validate(const GridParams& g);

// Z_f = (R + sL) I + J w1 L
QuaternionElement filter_impedance(const ConverterParams& p);

// D = e^{-J w1 Td} e^{-s Td}: Q0 = e^{-sTd} cos(w1 Td), Q2 = -e^{-sTd} sin(w1 Td)
QuaternionElement delay_model(const ConverterParams& p);

// CC(s) = kp + ki/s as a scalar element.
TransferElement cc_tf(const ConverterParams& p);

// Z_cc = D (CC I - J w1 L)
QuaternionElement cc_impedance(const ConverterParams& p);

// PLL(s) = (kp + ki/s) / (s + v1 (kp + ki/s))
TransferElement pll_tf(const ConverterParams& p);

// G_pll = D U1 J PLL Im
QuaternionElement pll_admittance_path(const ConverterParams& p, const OperatingPoint& op);

// G_cc = D CC I1 J PLL Im
QuaternionElement cc_pll_cross_path(const ConverterParams& p, const OperatingPoint& op);

// G_ff = D
QuaternionElement feedforward_path(const ConverterParams& p);

/// Control paths included in the admittance assembly. Disabling paths is
/// useful when attributing instability to individual loops.
struct PathToggles {
    bool ff = true;
    bool pll = true;
    bool cc_cross = true;
};

/// Converter admittance split: Y_total = -Y_o + Y_ff + Y_pll + Y_cc with
/// Y_o = (Z_f + Z_cc)^{-1} and Y_x = Y_o G_x.
struct AdmittanceParts {
    QuaternionElement y_total;
    QuaternionElement y_o;
    QuaternionElement y_ff;
    QuaternionElement y_pll;
    QuaternionElement y_cc;
};

AdmittanceParts converter_admittance(const ConverterParams& p, const OperatingPoint& op,
                                     const PathToggles& toggles = {});

// Frequency-shifted [(Rg + s Lg)^{-1} + s Cg]^{-1}.
QuaternionElement grid_impedance(const GridParams& g, double w1);

// Scalar (unshifted) grid impedance, exposed for the operating-point solve
// and for state-space assembly.
TransferElement grid_impedance_scalar(const GridParams& g);

// Phasor KCL at the PCC at w1 with |Vg| = v1, frame rotated so Vc_q = 0.
OperatingPoint solve_operating_point(const ConverterParams& p, const GridParams& g);

// Scale PLL gains to a new bandwidth preserving the damping ratio:
// kp' = kp (f/330), ki' = ki (f/330)^2 with 330 Hz the Table-tuning reference.
ConverterParams retune_pll_bandwidth(const ConverterParams& p, double f_bw_hz);

} // namespace pstab
