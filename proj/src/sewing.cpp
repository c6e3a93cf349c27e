#include "g2sew/sewing.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace g2sew {

namespace {

CMatrix build_a(int side, const SewingPoint &p, int K)
{
    const auto e = eisenstein_table(2 * K, p.tau(side));
    std::vector<cplx> pw(2 * K + 1);
    pw[0] = 1.0;
    for (int j = 1; j <= 2 * K; ++j) pw[j] = pw[j - 1] * p.sqrt_eps;
    CMatrix a = CMatrix::Zero(K, K);
    for (int k = 1; k <= K; ++k)
        for (int l = 1; l <= K; ++l) {
            if ((k + l) % 2 != 0) continue;
            const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
            a(k - 1, l - 1) = pw[k + l] / std::sqrt(double(k) * l) * sign * binomial_ratio(k, l) * e[k + l];
        }
    return a;
}

// (I - M)^{-1} by LU, cross-checked with sum_n M^n.
CMatrix checked_inverse(const CMatrix &m)
{
    const int K = static_cast<int>(m.rows());
    const CMatrix id = CMatrix::Identity(K, K);
    Eigen::PartialPivLU<CMatrix> lu(id - m);
    if (!(lu.rcond() > 1e-14)) throw SingularMatrixError("I - A1 A2 is numerically singular");
    CMatrix r = lu.inverse();

    CMatrix sum = id, pw = id;
    bool settled = false;
    for (int n = 1; n <= 5000; ++n) {
        pw = pw * m;
        sum += pw;
        if (pw.norm() <= 1e-17 * sum.norm()) {
            settled = true;
            break;
        }
        if (!std::isfinite(pw.norm())) break;
    }
    if (!settled) throw InconsistencyError("Neumann series for (I - A1 A2)^{-1} does not settle");
    if ((r - sum).norm() > 1e-8 * std::max(1.0, r.norm()))
        throw InconsistencyError("resolvent disagrees with its Neumann series");
    return r;
}

// Smallest |z - lambda| over lattice points lambda.
double lattice_clearance(const TorusModulus &m, cplx z)
{
    const cplx w1 = two_pi_i, w2 = two_pi_i * m.tau();
    const double n2 = std::round(z.real() / w2.real());
    cplx r = z - n2 * w2;
    r -= std::round(r.imag() / w1.imag()) * w1;
    double best = std::abs(r);
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) best = std::min(best, std::abs(r - double(a) * w2 - double(b) * w1));
    return best;
}

} // namespace

SewingPoint make_point(cplx tau1, cplx tau2, cplx eps)
{
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag())) throw DomainError("eps must be finite");
    SewingPoint p{TorusModulus(tau1), TorusModulus(tau2), eps, std::sqrt(eps)};
    p.D1 = min_lattice_distance(p.tau1);
    p.D2 = min_lattice_distance(p.tau2);
    p.bound = 0.25 * p.D1 * p.D2;
    p.margin = std::abs(eps) / p.bound;
    if (!(p.margin < 1.0)) throw DomainError("|eps| must be below D(q1) D(q2) / 4");
    return p;
}

SewingPoint point_at_margin(cplx tau1, cplx tau2, double margin, double phase)
{
    const double bound = 0.25 * min_lattice_distance(TorusModulus(tau1)) * min_lattice_distance(TorusModulus(tau2));
    return make_point(tau1, tau2, std::polar(margin * bound, phase));
}

TruncatedAMatrix a_matrix(int side, const SewingPoint &p, int K)
{
    if (side != 1 && side != 2) throw DomainError("side must be 1 or 2");
    if (K < 2) throw DomainError("A-matrix truncation requires K >= 2");
    return {build_a(side, p, K), K, side};
}

LogDet log_det_I_minus_A1A2(const SewingPoint &p, int K, double tol)
{
    if (K < 1) throw DomainError("truncation must be positive");
    const CMatrix m = build_a(1, p, K) * build_a(2, p, K);
    LogDet out;
    CMatrix pw = CMatrix::Identity(K, K);
    cplx sum = 0.0;
    for (int n = 1; n <= 64; ++n) {
        pw = pw * m;
        const cplx term = pw.trace() / double(n);
        sum += term;
        out.terms = n;
        if (std::abs(term) < 1e-16) break;
    }
    out.log_det = -sum;
    out.det = std::exp(out.log_det);
    out.det_lu = (CMatrix::Identity(K, K) - m).partialPivLu().determinant();
    if (std::abs(out.det - out.det_lu) > 100.0 * tol * std::max(1.0, std::abs(out.det_lu)))
        throw InconsistencyError("trace-series and LU determinants disagree");
    return out;
}

cplx det_I_minus_A1A2(const SewingPoint &p, int K, double tol) { return log_det_I_minus_A1A2(p, K, tol).det; }

CMatrix resolvent(const SewingPoint &p, int K)
{
    if (K < 1) throw DomainError("truncation must be positive");
    return checked_inverse(build_a(1, p, K) * build_a(2, p, K));
}

Sewing::Sewing(const SewingPoint &p, int K) : p_(p), K_(K)
{
    if (K < 1) throw DomainError("truncation must be positive");
    A1_ = build_a(1, p, K);
    A2_ = build_a(2, p, K);
    R12_ = checked_inverse(A1_ * A2_);
    R21_ = checked_inverse(A2_ * A1_);
    A2R12_ = A2_ * R12_;
    A1R21_ = A1_ * R21_;
}

CRow Sewing::a_vector(int side, cplx z) const
{
    CRow v = CRow::Zero(K_);
    if (p_.eps == cplx{}) return v;
    const auto P = elliptic_P_torus_table(K_ + 1, p_.tau(side), z);
    cplx pw = 1.0;
    for (int k = 1; k <= K_; ++k) {
        pw *= p_.sqrt_eps;
        v(k - 1) = std::sqrt(double(k)) * pw * P[k + 1];
    }
    return v;
}

void Sewing::validate(const SheetPoint &x) const
{
    if (x.sheet != 1 && x.sheet != 2) throw DomainError("sheet must be 1 or 2");
    if (!std::isfinite(x.z.real()) || !std::isfinite(x.z.imag())) throw DomainError("point must be finite");
    const double hole = 2.0 * std::abs(p_.eps) / p_.D(3 - x.sheet);
    const double clearance = lattice_clearance(p_.tau(x.sheet), x.z);
    if (clearance == 0.0) throw PoleError("point coincides with the puncture");
    if (clearance <= hole) throw OutOfDiskError("point lies inside the excised disk");
}

PeriodMatrix Sewing::period() const
{
    const cplx e = p_.eps;
    const cplx w11 = two_pi_i * p_.tau1.tau() + e * A2R12_(0, 0);
    const cplx w22 = two_pi_i * p_.tau2.tau() + e * A1R21_(0, 0);
    const cplx w12 = -e * R12_(0, 0);
    return {w11 / two_pi_i, w12 / two_pi_i, w22 / two_pi_i, 0.0};
}

cplx Sewing::nu(int i, const SheetPoint &x) const
{
    validate(x);
    if (i != 1 && i != 2) throw DomainError("form index must be 1 or 2");
    const CRow av = a_vector(x.sheet, x.z);
    if (i == x.sheet) {
        const CMatrix &ar = x.sheet == 1 ? A2R12_ : A1R21_;
        return 1.0 + p_.sqrt_eps * (av * ar.col(0))(0);
    }
    return -p_.sqrt_eps * (av * R(i).col(0))(0);
}

cplx Sewing::omega2(const SheetPoint &x, const SheetPoint &y) const
{
    validate(x);
    validate(y);
    const CRow ax = a_vector(x.sheet, x.z), ay = a_vector(y.sheet, y.z);
    if (x.sheet == y.sheet) {
        const int a = x.sheet;
        const cplx d = x.z - y.z;
        if (lattice_clearance(p_.tau(a), d) == 0.0) throw PoleError("coincident points");
        const CMatrix &ar = a == 1 ? A2R12_ : A1R21_;
        return elliptic_P_torus(2, p_.tau(a), d) + (ax * ar * ay.transpose())(0, 0);
    }
    return -(ax * R(y.sheet) * ay.transpose())(0, 0);
}

cplx Sewing::projective_connection(const SheetPoint &x) const
{
    validate(x);
    const int a = x.sheet;
    const CRow ax = a_vector(a, x.z);
    const CMatrix &ar = a == 1 ? A2R12_ : A1R21_;
    return 6.0 * (eisenstein(2, p_.tau(a)) + (ax * ar * ax.transpose())(0, 0));
}

PeriodMatrix period_matrix(const SewingPoint &p, int K)
{
    if (K < 1) throw DomainError("truncation must be positive");
    PeriodMatrix out = Sewing(p, K).period();
    const PeriodMatrix coarse = Sewing(p, std::max(1, K - 4)).period();
    out.est_error = std::max({std::abs(out.omega11 - coarse.omega11), std::abs(out.omega12 - coarse.omega12),
                              std::abs(out.omega22 - coarse.omega22)});
    return out;
}

cplx one_form_nu(int i, const SheetPoint &x, const SewingPoint &p, int K) { return Sewing(p, K).nu(i, x); }

cplx omega2(const SheetPoint &x, const SheetPoint &y, const SewingPoint &p, int K)
{
    return Sewing(p, K).omega2(x, y);
}

cplx projective_connection(const SheetPoint &x, const SewingPoint &p, int K)
{
    return Sewing(p, K).projective_connection(x);
}

cplx integrate_segment(const std::function<cplx(cplx)> &f, cplx z0, cplx z1, double tol)
{
    using boost::math::quadrature::gauss;
    const cplx dz = z1 - z0;
    auto pass = [&](int panels) {
        cplx total = 0.0;
        const double h = 1.0 / panels;
        for (int j = 0; j < panels; ++j) {
            const double t0 = j * h;
            total += gauss<double, 64>::integrate([&](double t) { return f(z0 + t * dz); }, t0, t0 + h);
        }
        return total * dz;
    };
    int panels = std::max(1, static_cast<int>(std::ceil(std::abs(dz))));
    cplx prev = pass(panels);
    for (int round = 0; round < 8; ++round) {
        panels *= 2;
        const cplx next = pass(panels);
        if (std::abs(next - prev) < tol * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    throw NonConvergentError("contour quadrature did not settle");
}

cplx a_cycle_integral(int cycle, int j, const Sewing &s)
{
    const cplx z0 = pi * cplx(0.0, 1.0) * s.point().tau(cycle).tau();
    return integrate_segment([&](cplx z) { return s.nu(j, {cycle, z}); }, z0, z0 + two_pi_i);
}

cplx b_cycle_integral(int cycle, int j, const Sewing &s)
{
    const cplx z0(0.0, pi);
    return integrate_segment([&](cplx z) { return s.nu(j, {cycle, z}); }, z0, z0 + two_pi_i * s.point().tau(cycle).tau());
}

double overlap_residual(const Sewing &s, const SheetPoint &x, double phase)
{
    const SewingPoint &p = s.point();
    if (p.eps == cplx{}) throw DomainError("the identification annulus needs eps != 0");
    const cplx z1 = std::polar(std::sqrt(std::abs(p.eps) * p.D1 / p.D2), phase);
    const cplx lhs = s.omega2(x, {1, z1});
    const cplx rhs = s.omega2(x, {2, p.eps / z1}) * (-p.eps / (z1 * z1));
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
}

} // namespace g2sew
