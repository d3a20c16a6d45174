#pragma once

#include <string>
#include <utility>
#include <vector>

#include "paulistab/pauli.hpp"

namespace pstab {

/// Per-frequency minor-loop sample.
struct MinorLoopSample {
    double omega = 0.0;        // rad/s
    PauliQuaternion loop;      // L = z*y (quaternion)
    complex l_char;            // 1 + 2<z,y> + ||z||^2 ||y||^2
    complex lambda1, lambda2;  // eigenvalues of the loop matrix
    double mag_db = 0.0;       // 10*log10(|l_char|)
    double phase_deg = 0.0;    // arg(l_char) in degrees
};

enum class Verdict { stable, unstable, marginal };

std::string to_string(Verdict v);

struct ContributionBreakdown {
    double omega_c = 0.0;
    complex l0, l1, l2, l3;
    complex l_at_wc;
    // Q0 parts of {-Y_o, Y_ff, Y_pll, Y_cc} at w_c (analytic source only).
    std::vector<std::pair<std::string, complex>> y0_components;
    // Complex gains of the G_cc chain factors at w_c.
    std::vector<std::pair<std::string, complex>> ycc0_factors;
};

struct StabilityReport {
    Verdict verdict = Verdict::stable;
    int encirclements = 0;
    double f_c_hz = 0.0;
    double min_distance = 0.0;
    ContributionBreakdown breakdown;
    std::vector<MinorLoopSample> trace;
    // The Nyquist count assumes no open-loop RHP poles; surfaced in reports.
    std::string assumption = "winding count assumes zero open-loop RHP poles";
};

// OpenMP-parallel minor-loop sweep (samples are independent); the _serial
// variant is the reference implementation the parallel kernel is tested
// against and must match bit-for-bit.
std::vector<MinorLoopSample> minor_loop(const QuaternionElement& z,
                                        const QuaternionElement& y,
                                        const FrequencyGrid& grid);
std::vector<MinorLoopSample> minor_loop_serial(const QuaternionElement& z,
                                               const QuaternionElement& y,
                                               const FrequencyGrid& grid);

// Roots of lambda^2 - 2 L0 lambda + ||L||^2; returned in unspecified order.
std::pair<complex, complex> eigenvalues(const PauliQuaternion& loop);

// rho_Y^min(w) = Re{Y0} - sqrt(Re{Y1}^2 + Im{Y2}^2 + Re{Y3}^2), per frequency.
std::vector<std::pair<double, double>> passivity_index(const QuaternionElement& y,
                                                       const FrequencyGrid& grid);
std::vector<std::pair<double, double>> passivity_index_serial(const QuaternionElement& y,
                                                              const FrequencyGrid& grid);

/// Winding number of l_char about the origin over the closed +-jw contour
/// (conjugate symmetry assumed). Steps larger than 90 deg are treated as
/// jw-axis pole crossings when both endpoints are far from the origin
/// (right-indented contour, -pi per crossing); otherwise UnderResolved.
std::pair<int, Verdict> nyquist_verdict(const std::vector<MinorLoopSample>& trace);

// argmin |l_char| over the trace; ties toward the lowest frequency.
std::pair<double, double> critical_frequency(const std::vector<MinorLoopSample>& trace);

// The l0..l3 terms of L(jw_c) = 1 + l0 + l1 + l2 + l3 from the z/y samples.
ContributionBreakdown contributions(const QuaternionElement& z, const QuaternionElement& y,
                                    double omega_c);

// |l_n| descending (ties by index); entries with zero magnitude dropped.
struct RankedTerm {
    std::string name;
    double magnitude;
    double phase_deg;
};
std::vector<RankedTerm> rank_root_causes(const ContributionBreakdown& b);

// Thread cap for sweeps: min(omp_get_max_threads(), PAULI_STAB_THREADS).
int sweep_thread_cap();

} // namespace pstab
