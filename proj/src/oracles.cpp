#include "paulistab/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>

namespace pstab {
namespace oracle {

complex matrix_det2(const DqMatrix& m) {
    return m.dd * m.qq - m.dq * m.qd;
}

complex matrix_trace2(const DqMatrix& m) {
    return m.dd + m.qq;
}

DqMatrix matrix_mul2(const DqMatrix& a, const DqMatrix& b) {
    return {a.dd * b.dd + a.dq * b.qd, a.dd * b.dq + a.dq * b.qq,
            a.qd * b.dd + a.qq * b.qd, a.qd * b.dq + a.qq * b.qq};
}

DqMatrix matrix_inv2(const DqMatrix& m) {
    const complex det = matrix_det2(m);
    const double scale = std::max({std::abs(m.dd), std::abs(m.dq),
                                   std::abs(m.qd), std::abs(m.qq)});
    if (std::abs(det) <= 1e-14 * scale * scale || scale == 0.0)
        throw SingularMatrix("matrix_inv2: determinant below relative floor");
    const complex inv = 1.0 / det;
    return {m.qq * inv, -m.dq * inv, -m.qd * inv, m.dd * inv};
}

std::pair<complex, complex> matrix_eig2(const DqMatrix& m) {
    const complex tr = matrix_trace2(m);
    const complex det = matrix_det2(m);
    complex r = std::sqrt(tr * tr - 4.0 * det);
    if ((std::conj(tr) * r).real() < 0.0) r = -r;
    const complex l1 = (tr + r) / 2.0;
    const complex l2 = (std::abs(l1) > 0.0) ? det / l1 : (tr - r) / 2.0;
    return {l1, l2};
}

namespace {

// Descending-power coefficients of the diagonal Pade approximant of e^{-s*Td}.
void pade_coeffs(double Td, int order, std::vector<double>& num, std::vector<double>& den) {
    if (order < 1)
        throw InvalidRange("pade_delay: order must be >= 1");
    if (Td < 0.0)
        throw InvalidRange("pade_delay: delay must be >= 0");
    const int n = order;
    num.assign(static_cast<std::size_t>(n) + 1, 0.0);
    den.assign(static_cast<std::size_t>(n) + 1, 0.0);
    double ck = 1.0; // c_0 = 1, c_{k+1} = c_k (n-k) / ((2n-k)(k+1))
    for (int k = 0; k <= n; ++k) {
        num[static_cast<std::size_t>(n - k)] = ck * std::pow(-Td, k);
        den[static_cast<std::size_t>(n - k)] = ck * std::pow(Td, k);
        if (k < n)
            ck *= static_cast<double>(n - k) / (static_cast<double>(2 * n - k) * (k + 1));
    }
}

} // namespace

TransferElement pade_delay(double Td, int order) {
    std::vector<double> num, den;
    pade_coeffs(Td, order, num, den);
    return TransferElement::rational(std::move(num), std::move(den));
}

void StateSpaceModel::validate() const {
    const auto nn = static_cast<std::size_t>(n);
    const auto mm = static_cast<std::size_t>(m);
    const auto pp = static_cast<std::size_t>(p);
    if (n <= 0 || m < 0 || p < 0)
        throw AssemblyError("state space: non-positive dimensions");
    if (A.size() != nn * nn || B.size() != nn * mm || C.size() != pp * nn || D.size() != pp * mm)
        throw AssemblyError("state space: matrix storage does not match dimensions");
}

namespace {

// Controller-canonical realization of a (bi)proper rational in descending
// coefficients. Returns {A, b, c, d} with A n-by-n row-major.
struct SisoSS {
    int n;
    std::vector<double> A, b, c;
    double d;
};

SisoSS realize(const std::vector<double>& num_in, const std::vector<double>& den_in) {
    std::vector<double> den = den_in;
    std::vector<double> num = num_in;
    if (den.empty() || den[0] == 0.0)
        throw AssemblyError("realize: denominator not monic-izable");
    const double lead = den[0];
    for (auto& c : den) c /= lead;
    for (auto& c : num) c /= lead;
    if (num.size() > den.size())
        throw AssemblyError("realize: improper transfer function");
    while (num.size() < den.size()) num.insert(num.begin(), 0.0);
    const int n = static_cast<int>(den.size()) - 1;
    SisoSS ss;
    ss.n = n;
    ss.d = num[0];
    ss.A.assign(static_cast<std::size_t>(n) * n, 0.0);
    ss.b.assign(static_cast<std::size_t>(n), 0.0);
    ss.c.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        ss.A[static_cast<std::size_t>(j)] = -den[static_cast<std::size_t>(j) + 1];
        ss.c[static_cast<std::size_t>(j)] =
            num[static_cast<std::size_t>(j) + 1] - ss.d * den[static_cast<std::size_t>(j) + 1];
    }
    for (int i = 1; i < n; ++i)
        ss.A[static_cast<std::size_t>(i) * n + (i - 1)] = 1.0;
    if (n > 0) ss.b[0] = 1.0;
    return ss;
}

std::vector<complex> eigs_checked(const StateSpaceModel& ss) {
    ss.validate();
    using Mat = Eigen::MatrixXd;
    Mat A(ss.n, ss.n);
    for (int i = 0; i < ss.n; ++i)
        for (int j = 0; j < ss.n; ++j)
            A(i, j) = ss.A[static_cast<std::size_t>(i) * ss.n + j];
    Eigen::EigenSolver<Mat> solver(A);
    if (solver.info() != Eigen::Success)
        throw Error("eigensolver failed to converge");
    const double anorm = A.norm();
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(ss.n));
    for (int k = 0; k < ss.n; ++k) {
        const complex lambda = solver.eigenvalues()(k);
        Eigen::VectorXcd v = solver.eigenvectors().col(k);
        const double resid = (A.cast<complex>() * v - lambda * v).norm() / v.norm();
        if (resid > 1e-8 * anorm)
            throw Error("eigenpair residual exceeds 1e-8 * |A|");
        out.push_back(lambda);
    }
    return out;
}

} // namespace

StateSpaceModel assemble_closed_loop(const ConverterParams& p, const GridParams& g,
                                     int pade_order) {
    validate(p);
    validate(g);
    const OperatingPoint op = solve_operating_point(p, g);

    std::vector<double> pnum, pden;
    pade_coeffs(p.Td, pade_order, pnum, pden);
    const SisoSS pade = realize(pnum, pden);
    const int npd = pade.n;
    const int n = 10 + 2 * npd;

    StateSpaceModel ss;
    ss.n = n;
    ss.m = 2;
    ss.p = 2;
    ss.A.assign(static_cast<std::size_t>(n) * n, 0.0);
    ss.B.assign(static_cast<std::size_t>(n) * 2, 0.0);
    ss.C.assign(static_cast<std::size_t>(2) * n, 0.0);
    ss.D.assign(4, 0.0);

    // State layout: i(0,1) vc(2,3) ig(4,5) xcc(6,7) xpll(8) th(9) xd_d xd_q.
    const int iI = 0, iV = 2, iG = 4, iX = 6, iP = 8, iT = 9;
    const int iD0 = 10, iD1 = 10 + npd;

    const double w1 = p.w1;
    const double cr = std::cos(w1 * p.Td);
    const double sr = std::sin(w1 * p.Td);

    // th-coupling constants: u_cc th-term j*I1, command th-term j*U1 (both
    // inside the delay; the paper model lumps the whole chain behind D).
    const double ccth_d = -op.i1_q, ccth_q = op.i1_d;   // j*I1
    const double u1th_d = -op.u1_q, u1th_q = op.u1_d;   // j*U1

    // Command rows w = f(states), per channel (d then q).
    std::vector<double> w_d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> w_q(static_cast<std::size_t>(n), 0.0);
    // + vc
    w_d[iV] += 1.0;
    w_q[iV + 1] += 1.0;
    // -(kp_cc I - w1 L J) i   (J i = [-i_q, i_d])
    w_d[iI] += -p.kp_cc;
    w_d[iI + 1] += -w1 * p.L;
    w_q[iI] += w1 * p.L;
    w_q[iI + 1] += -p.kp_cc;
    // + xcc
    w_d[iX] += 1.0;
    w_q[iX + 1] += 1.0;
    // + th * (kp_cc * jI1 + jU1)
    w_d[iT] += p.kp_cc * ccth_d + u1th_d;
    w_q[iT] += p.kp_cc * ccth_q + u1th_q;

    auto at = [&](int i, int j) -> double& { return ss.A[static_cast<std::size_t>(i) * n + j]; };

    // v_o = rot * (Cd xd + d_feed * w), rot = e^{-J w1 Td}
    std::vector<double> vo_d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> vo_q(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < npd; ++k) {
        vo_d[static_cast<std::size_t>(iD0 + k)] += pade.c[static_cast<std::size_t>(k)];
        vo_q[static_cast<std::size_t>(iD1 + k)] += pade.c[static_cast<std::size_t>(k)];
    }
    for (int j = 0; j < n; ++j) {
        vo_d[static_cast<std::size_t>(j)] += pade.d * w_d[static_cast<std::size_t>(j)];
        vo_q[static_cast<std::size_t>(j)] += pade.d * w_q[static_cast<std::size_t>(j)];
    }
    for (int j = 0; j < n; ++j) {
        const double vd = vo_d[static_cast<std::size_t>(j)];
        const double vq = vo_q[static_cast<std::size_t>(j)];
        // rot = [[cr, sr], [-sr, cr]]  (e^{-J w1 Td}, J = [[0,-1],[1,0]])
        vo_d[static_cast<std::size_t>(j)] = cr * vd + sr * vq;
        vo_q[static_cast<std::size_t>(j)] = -sr * vd + cr * vq;
    }

    // Filter: L i' = v_o - v_c - (R I + w1 L J) i
    for (int j = 0; j < n; ++j) {
        at(iI, j) += vo_d[static_cast<std::size_t>(j)] / p.L;
        at(iI + 1, j) += vo_q[static_cast<std::size_t>(j)] / p.L;
    }
    at(iI, iV) += -1.0 / p.L;
    at(iI + 1, iV + 1) += -1.0 / p.L;
    at(iI, iI) += -p.R / p.L;
    at(iI, iI + 1) += w1; // -(w1 L J i)/L, J i = [-i_q, i_d]
    at(iI + 1, iI) += -w1;
    at(iI + 1, iI + 1) += -p.R / p.L;

    // PCC: Cg vc' = i - ig - w1 Cg J vc
    at(iV, iI) += 1.0 / g.Cg;
    at(iV + 1, iI + 1) += 1.0 / g.Cg;
    at(iV, iG) += -1.0 / g.Cg;
    at(iV + 1, iG + 1) += -1.0 / g.Cg;
    at(iV, iV + 1) += w1;
    at(iV + 1, iV) += -w1;

    // Grid branch: Lg ig' = vc - vg - (Rg I + w1 Lg J) ig
    at(iG, iV) += 1.0 / g.Lg;
    at(iG + 1, iV + 1) += 1.0 / g.Lg;
    at(iG, iG) += -g.Rg / g.Lg;
    at(iG, iG + 1) += w1;
    at(iG + 1, iG) += -w1;
    at(iG + 1, iG + 1) += -g.Rg / g.Lg;
    ss.B[static_cast<std::size_t>(iG) * 2 + 0] = -1.0 / g.Lg;
    ss.B[static_cast<std::size_t>(iG + 1) * 2 + 1] = -1.0 / g.Lg;

    // CC integrators: xcc' = ki_cc (-i + j I1 th)
    at(iX, iI) += -p.ki_cc;
    at(iX + 1, iI + 1) += -p.ki_cc;
    at(iX, iT) += p.ki_cc * ccth_d;
    at(iX + 1, iT) += p.ki_cc * ccth_q;

    // PLL: e = vc_q - v1 th ; xpll' = ki e ; th' = xpll + kp e
    at(iP, iV + 1) += p.ki_pll;
    at(iP, iT) += -p.ki_pll * p.v1;
    at(iT, iP) += 1.0;
    at(iT, iV + 1) += p.kp_pll;
    at(iT, iT) += -p.kp_pll * p.v1;

    // Delay channels: xd' = A xd + b w
    for (int i = 0; i < npd; ++i) {
        for (int j = 0; j < npd; ++j) {
            at(iD0 + i, iD0 + j) += pade.A[static_cast<std::size_t>(i) * npd + j];
            at(iD1 + i, iD1 + j) += pade.A[static_cast<std::size_t>(i) * npd + j];
        }
        for (int j = 0; j < n; ++j) {
            at(iD0 + i, j) += pade.b[static_cast<std::size_t>(i)] * w_d[static_cast<std::size_t>(j)];
            at(iD1 + i, j) += pade.b[static_cast<std::size_t>(i)] * w_q[static_cast<std::size_t>(j)];
        }
    }

    // Output: injected current.
    ss.C[static_cast<std::size_t>(0) * n + iI] = 1.0;
    ss.C[static_cast<std::size_t>(1) * n + iI + 1] = 1.0;

    ss.validate();
    return ss;
}

std::vector<complex> closed_loop_eigs(const ConverterParams& p, const GridParams& g,
                                      int pade_order) {
    return eigs_checked(assemble_closed_loop(p, g, pade_order));
}

std::vector<complex> grid_only_eigs(const GridParams& g, double w1) {
    validate(g);
    StateSpaceModel ss;
    ss.n = 4;
    ss.m = 0;
    ss.p = 0;
    ss.A.assign(16, 0.0);
    auto at = [&](int i, int j) -> double& { return ss.A[static_cast<std::size_t>(i) * 4 + j]; };
    // States: vc(0,1), ig(2,3); converter branch open.
    at(0, 2) = -1.0 / g.Cg;
    at(1, 3) = -1.0 / g.Cg;
    at(0, 1) = w1;
    at(1, 0) = -w1;
    at(2, 0) = 1.0 / g.Lg;
    at(3, 1) = 1.0 / g.Lg;
    at(2, 2) = -g.Rg / g.Lg;
    at(2, 3) = w1;
    at(3, 2) = -w1;
    at(3, 3) = -g.Rg / g.Lg;
    return eigs_checked(ss);
}

} // namespace oracle
} // namespace pstab
