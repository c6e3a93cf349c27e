#include "g2sew/modular.hpp"

#include <cmath>

#include "g2sew/errors.hpp"

namespace g2sew {

namespace {

const cplx I(0.0, 1.0);

Sp4 embed_one(const SL2 &g, int slot) {
    Sp4 M = Sp4::Zero();
    // A B / C D blocks, each diagonal; the other slot is the identity
    int k = slot - 1, o = 1 - k;
    M(k, k) = g(0, 0);
    M(k, 2 + k) = g(0, 1);
    M(2 + k, k) = g(1, 0);
    M(2 + k, 2 + k) = g(1, 1);
    M(o, o) = 1;
    M(2 + o, 2 + o) = 1;
    return M;
}

Sp4 embed_beta() {
    Sp4 M = Sp4::Zero();
    M(0, 1) = M(1, 0) = M(2, 3) = M(3, 2) = 1;
    return M;
}

cplx mobius(const SL2 &g, cplx tau) { return (double(g(0, 0)) * tau + double(g(0, 1))) / (double(g(1, 0)) * tau + double(g(1, 1))); }

cplx chi_at(const SL2 &g, cplx tau) {
    cplx e0 = dedekind_eta(TorusModulus(tau)), e1 = dedekind_eta(TorusModulus(mobius(g, tau)));
    cplx j = double(g(1, 0)) * tau + double(g(1, 1));
    // eta(g tau)^{-2} / (eta(tau)^{-2} (c tau + d)^{-1})
    return e0 * e0 * j / (e1 * e1);
}

} // namespace

SL2 sl2_T() {
    SL2 m;
    m << 1, 1, 0, 1;
    return m;
}

SL2 sl2_S() {
    SL2 m;
    m << 0, -1, 1, 0;
    return m;
}

GElement::GElement(SL2 g1, SL2 g2, int b) : gamma1(std::move(g1)), gamma2(std::move(g2)), beta_power(b) {
    if (gamma1.determinant() != 1 || gamma2.determinant() != 1) throw DomainError("GElement: det must be 1");
    if (b != 0 && b != 1) throw DomainError("GElement: beta power must be 0 or 1");
}

GElement compose(const GElement &g, const GElement &h) {
    // beta (d1, d2) beta = (d2, d1)
    const SL2 &h1 = g.beta_power ? h.gamma2 : h.gamma1;
    const SL2 &h2 = g.beta_power ? h.gamma1 : h.gamma2;
    return {g.gamma1 * h1, g.gamma2 * h2, (g.beta_power + h.beta_power) % 2};
}

SewingPoint act_on_domain(const GElement &g, const SewingPoint &p) {
    cplx t1 = p.tau1.tau(), t2 = p.tau2.tau(), eps = p.eps;
    if (g.beta_power) std::swap(t1, t2);
    cplx j1 = double(g.gamma1(1, 0)) * t1 + double(g.gamma1(1, 1));
    cplx j2 = double(g.gamma2(1, 0)) * t2 + double(g.gamma2(1, 1));
    return make_point(mobius(g.gamma1, t1), mobius(g.gamma2, t2), eps / (j1 * j2));
}

Sp4 embed_sp4(const GElement &g) {
    Sp4 M = embed_one(g.gamma1, 1) * embed_one(g.gamma2, 2);
    if (g.beta_power) M = M * embed_beta();
    return M;
}

bool is_symplectic(const Sp4 &M) {
    Sp4 J = Sp4::Zero();
    J.topRightCorner<2, 2>() = Eigen::Matrix2i::Identity();
    J.bottomLeftCorner<2, 2>() = -Eigen::Matrix2i::Identity();
    return M.transpose() * J * M == J;
}

Eigen::Matrix2cd act_on_H2(const Sp4 &M, const Eigen::Matrix2cd &Omega) {
    Eigen::Matrix4cd Mc = M.cast<cplx>();
    Eigen::Matrix2cd num = Mc.topLeftCorner<2, 2>() * Omega + Mc.topRightCorner<2, 2>();
    Eigen::Matrix2cd den = Mc.bottomLeftCorner<2, 2>() * Omega + Mc.bottomRightCorner<2, 2>();
    Eigen::FullPivLU<Eigen::Matrix2cd> lu(den);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) throw SingularMatrixError("act_on_H2: C Omega + D is singular");
    Eigen::Matrix2cd out = num * lu.inverse();
    return 0.5 * (out + out.transpose());
}

cplx automorphy_factor(const Sp4 &M, const Eigen::Matrix2cd &Omega) {
    Eigen::Matrix4cd Mc = M.cast<cplx>();
    return (Mc.bottomLeftCorner<2, 2>() * Omega + Mc.bottomRightCorner<2, 2>()).determinant();
}

cplx snap_to_twelfth_root(cplx z) {
    static const double h = 0.5, r3 = std::sqrt(3.0) / 2.0;
    static const cplx roots[12] = {{1, 0},  {r3, h},   {h, r3},   {0, 1},  {-h, r3},  {-r3, h},
                                   {-1, 0}, {-r3, -h}, {-h, -r3}, {0, -1}, {h, -r3}, {r3, -h}};
    int k = static_cast<int>(std::lround(std::arg(z) / (pi / 6.0)));
    cplx r = roots[(k % 12 + 12) % 12];
    if (std::abs(z - r) > 1e-6) throw InconsistencyError("value is not a twelfth root of unity");
    return r;
}

cplx chi(const SL2 &g) {
    if (g.determinant() != 1) throw DomainError("chi: det must be 1");
    int c = g(1, 0), d = g(1, 1);
    cplx p1 = I, p2 = 2.0 * I;
    if (c != 0) {
        double s = c > 0 ? 1.0 : -1.0;
        p1 = (double(-d) + s * I) / double(c);
        p2 = (double(-d) + 2.0 * s * I) / double(c);
    }
    cplx a = snap_to_twelfth_root(chi_at(g, p1)), b = snap_to_twelfth_root(chi_at(g, p2));
    if (std::abs(a - b) > 1e-12) throw InconsistencyError("chi: probes disagree");
    return a;
}

cplx chi2(const GElement &g) {
    return snap_to_twelfth_root((g.beta_power ? -1.0 : 1.0) * chi(g.gamma1) * chi(g.gamma2));
}

double check_equivariance(const GElement &g, const SewingPoint &p, int K) {
    Eigen::Matrix2cd lhs = period_matrix(act_on_domain(g, p), K).matrix();
    Eigen::Matrix2cd rhs = act_on_H2(embed_sp4(g), period_matrix(p, K).matrix());
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

AutomorphyResult check_automorphy(const GElement &g, const SewingPoint &p, int K, int rank) {
    if (rank != 2 && rank != 24) throw DomainError("check_automorphy: rank must be 2 or 24");
    SewingPoint gp = act_on_domain(g, p);
    cplx det = automorphy_factor(embed_sp4(g), period_matrix(p, K).matrix());
    cplx ratio = z2_heisenberg(gp, K, rank).value * std::pow(det, rank / 2) / z2_heisenberg(p, K, rank).value;
    AutomorphyResult r;
    if (rank == 2) {
        r.character = snap_to_twelfth_root(ratio);
        r.residual = std::abs(ratio - r.character);
    } else {
        r.character = 1.0;
        r.residual = std::abs(ratio - 1.0);
    }
    return r;
}

double check_lattice_automorphy(const GElement &g, const EvenLattice &L, const SewingPoint &p, int K) {
    cplx lhs = siegel_theta2(L, period_matrix(act_on_domain(g, p), K).matrix()).value;
    cplx rhs = siegel_theta2(L, act_on_H2(embed_sp4(g), period_matrix(p, K).matrix())).value;
    return std::abs(lhs - rhs) / std::abs(rhs);
}

} // namespace g2sew
