#include "paulistab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <omp.h>

namespace pstab {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::marginal: return "marginal";
    }
    return "unknown";
}

int sweep_thread_cap() {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("PAULI_STAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1)
            cap = std::min<long>(cap, v);
    }
    return cap;
}

namespace {

MinorLoopSample sample_at(const QuaternionElement& z, const QuaternionElement& y,
                          double omega) {
    const complex s(0.0, omega);
    const PauliQuaternion zq = z.evaluate(s);
    const PauliQuaternion yq = y.evaluate(s);
    MinorLoopSample out;
    out.omega = omega;
    out.loop = q_mul(zq, yq);
    // <z,y> equals the scalar part of the product (Appendix identity), so
    // the characteristic value reuses loop.q0.
    out.l_char = 1.0 + 2.0 * out.loop.q0 + semi_norm_sq(zq) * semi_norm_sq(yq);
    auto [l1, l2] = eigenvalues(out.loop);
    out.lambda1 = l1;
    out.lambda2 = l2;
    out.mag_db = 10.0 * std::log10(std::abs(out.l_char));
    out.phase_deg = std::arg(out.l_char) * 180.0 / pi;
    return out;
}

} // namespace

std::vector<MinorLoopSample> minor_loop_serial(const QuaternionElement& z,
                                               const QuaternionElement& y,
                                               const FrequencyGrid& grid) {
    std::vector<MinorLoopSample> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[i] = sample_at(z, y, grid.omega_at(i));
    return out;
}

std::vector<MinorLoopSample> minor_loop(const QuaternionElement& z,
                                        const QuaternionElement& y,
                                        const FrequencyGrid& grid) {
    std::vector<MinorLoopSample> out(grid.size());
    const int n = static_cast<int>(grid.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(static) num_threads(sweep_thread_cap())
    for (int i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = sample_at(z, y, grid.omega_at(static_cast<std::size_t>(i)));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

std::pair<complex, complex> eigenvalues(const PauliQuaternion& loop) {
    // lambda = L0 +- sqrt(L1^2 - L2^2 + L3^2)
    const complex root = std::sqrt(loop.q1 * loop.q1 - loop.q2 * loop.q2 + loop.q3 * loop.q3);
    return {loop.q0 + root, loop.q0 - root};
}

namespace {

double rho_at(const QuaternionElement& y, double omega) {
    const PauliQuaternion q = y.evaluate(complex(0.0, omega));
    const double v1 = q.q1.real();
    const double v2 = q.q2.imag();
    const double v3 = q.q3.real();
    return q.q0.real() - std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
}

} // namespace

std::vector<std::pair<double, double>> passivity_index_serial(const QuaternionElement& y,
                                                              const FrequencyGrid& grid) {
    std::vector<std::pair<double, double>> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[i] = {grid.omega_at(i), rho_at(y, grid.omega_at(i))};
    return out;
}

std::vector<std::pair<double, double>> passivity_index(const QuaternionElement& y,
                                                       const FrequencyGrid& grid) {
    std::vector<std::pair<double, double>> out(grid.size());
    const int n = static_cast<int>(grid.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(static) num_threads(sweep_thread_cap())
    for (int i = 0; i < n; ++i) {
        try {
            const auto idx = static_cast<std::size_t>(i);
            out[idx] = {grid.omega_at(idx), rho_at(y, grid.omega_at(idx))};
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

std::pair<int, Verdict> nyquist_verdict(const std::vector<MinorLoopSample>& trace) {
    if (trace.size() < 2)
        throw InvalidRange("nyquist_verdict: trace too short");

    // Median |l_char| separates pole excursions from near-origin passes.
    std::vector<double> mags(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) mags[i] = std::abs(trace[i].l_char);
    std::vector<double> sorted = mags;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];

    // Closed contour: conjugate branch (descending w), forward branch, closure.
    std::vector<complex> pts;
    pts.reserve(2 * trace.size() + 1);
    for (auto it = trace.rbegin(); it != trace.rend(); ++it)
        pts.push_back(std::conj(it->l_char));
    for (const auto& s : trace) pts.push_back(s.l_char);
    pts.push_back(std::conj(trace.back().l_char));

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        double d = std::arg(pts[k + 1] / pts[k]);
        if (std::abs(d) > pi / 2.0) {
            const double lo = std::min(std::abs(pts[k]), std::abs(pts[k + 1]));
            if (lo > 10.0 * median) {
                // jw-axis pole of the open loop: the right-indented contour
                // sweeps a clockwise half turn there.
                d = -pi;
            } else {
                throw UnderResolved("nyquist_verdict: phase step > 90 deg at |L| ~= " +
                                    std::to_string(lo) + "; refine the grid");
            }
        }
        total += d;
    }
    const int winding = static_cast<int>(std::lround(total / (2.0 * pi)));

    auto [fc, dist] = critical_frequency(trace);
    (void)fc;
    Verdict v = (winding != 0) ? Verdict::unstable : Verdict::stable;
    if (dist < 1e-3 * (1.0 + median))
        v = Verdict::marginal;
    return {winding, v};
}

std::pair<double, double> critical_frequency(const std::vector<MinorLoopSample>& trace) {
    if (trace.empty())
        throw InvalidRange("critical_frequency: empty trace");
    std::size_t best = 0;
    double best_mag = std::abs(trace[0].l_char);
    for (std::size_t i = 1; i < trace.size(); ++i) {
        const double m = std::abs(trace[i].l_char);
        if (m < best_mag) {
            best = i;
            best_mag = m;
        }
    }
    return {trace[best].omega / (2.0 * pi), best_mag};
}

ContributionBreakdown contributions(const QuaternionElement& z, const QuaternionElement& y,
                                    double omega_c) {
    const complex s(0.0, omega_c);
    const PauliQuaternion zq = z.evaluate(s);
    const PauliQuaternion yq = y.evaluate(s);
    const complex snz = semi_norm_sq(zq);
    ContributionBreakdown b;
    b.omega_c = omega_c;
    b.l0 = 2.0 * zq.q0 * yq.q0 + yq.q0 * yq.q0 * snz;
    b.l1 = 2.0 * zq.q1 * yq.q1 - yq.q1 * yq.q1 * snz;
    b.l2 = -2.0 * zq.q2 * yq.q2 + yq.q2 * yq.q2 * snz;
    b.l3 = 2.0 * zq.q3 * yq.q3 - yq.q3 * yq.q3 * snz;
    b.l_at_wc = 1.0 + b.l0 + b.l1 + b.l2 + b.l3;
    return b;
}

std::vector<RankedTerm> rank_root_causes(const ContributionBreakdown& b) {
    const std::pair<const char*, complex> terms[] = {
        {"l0", b.l0}, {"l1", b.l1}, {"l2", b.l2}, {"l3", b.l3}};
    std::vector<RankedTerm> out;
    for (const auto& [name, val] : terms) {
        const double mag = std::abs(val);
        if (mag > 0.0)
            out.push_back({name, mag, std::arg(val) * 180.0 / pi});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const RankedTerm& a, const RankedTerm& b) { return a.magnitude > b.magnitude; });
    return out;
}

} // namespace pstab
