#ifndef G2SEW_SEWING_HPP
#define G2SEW_SEWING_HPP

#include <functional>

#include <Eigen/Dense>

#include "g2sew/series.hpp"

namespace g2sew {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;

inline constexpr int default_K = 16;

// (tau1, tau2, eps) inside |eps| < D(q1) D(q2) / 4.
struct SewingPoint {
    TorusModulus tau1;
    TorusModulus tau2;
    cplx eps;
    cplx sqrt_eps;
    double D1 = 0.0;
    double D2 = 0.0;
    double bound = 0.0;   // D1 D2 / 4
    double margin = 0.0;  // |eps| / bound

    const TorusModulus &tau(int side) const { return side == 1 ? tau1 : tau2; }
    double D(int side) const { return side == 1 ? D1 : D2; }
};

// Throws DomainError when the triple lies outside the sewing domain.
SewingPoint make_point(cplx tau1, cplx tau2, cplx eps);

// Point at the given fraction of the domain bound, eps = margin * bound * exp(i phase).
SewingPoint point_at_margin(cplx tau1, cplx tau2, double margin, double phase = 0.0);

struct TruncatedAMatrix {
    CMatrix entries;  // row/column k-1 holds index k
    int K = 0;
    int side = 1;
};

TruncatedAMatrix a_matrix(int side, const SewingPoint &p, int K = default_K);

struct LogDet {
    cplx log_det;  // -sum_n Tr((A1 A2)^n)/n
    cplx det;      // exp(log_det)
    cplx det_lu;   // direct LU of the truncated matrix
    int terms = 0;
};

LogDet log_det_I_minus_A1A2(const SewingPoint &p, int K = default_K, double tol = 1e-10);
cplx det_I_minus_A1A2(const SewingPoint &p, int K = default_K, double tol = 1e-10);

// (I - A1 A2)^{-1}; checked against the Neumann series.
CMatrix resolvent(const SewingPoint &p, int K = default_K);

struct PeriodMatrix {
    cplx omega11;
    cplx omega12;
    cplx omega22;
    double est_error = 0.0;

    cplx operator()(int i, int j) const
    {
        if (i == 1 && j == 1) return omega11;
        if (i == 2 && j == 2) return omega22;
        return omega12;
    }
    Eigen::Matrix2cd matrix() const
    {
        Eigen::Matrix2cd m;
        m << omega11, omega12, omega12, omega22;
        return m;
    }
    static PeriodMatrix from_matrix(const Eigen::Matrix2cd &m, double err = 0.0)
    {
        return {m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), m(1, 1), err};
    }
};

PeriodMatrix period_matrix(const SewingPoint &p, int K = default_K);

struct SheetPoint {
    int sheet = 1;
    cplx z;
};

// Matrices for one (point, K) pair, shared by all form evaluations.
class Sewing {
public:
    Sewing(const SewingPoint &p, int K = default_K);

    const SewingPoint &point() const { return p_; }
    int K() const { return K_; }
    const CMatrix &A(int side) const { return side == 1 ? A1_ : A2_; }
    // (I - A_a A_abar)^{-1}
    const CMatrix &R(int a) const { return a == 1 ? R12_ : R21_; }

    // a_a(k, x) = sqrt(k) eps^{k/2} P_{k+1}(tau_a, x), k = 1..K
    CRow a_vector(int side, cplx z) const;

    PeriodMatrix period() const;
    cplx nu(int i, const SheetPoint &x) const;
    cplx omega2(const SheetPoint &x, const SheetPoint &y) const;
    cplx projective_connection(const SheetPoint &x) const;

    void validate(const SheetPoint &x) const;

private:
    SewingPoint p_;
    int K_;
    CMatrix A1_, A2_, R12_, R21_;
    CMatrix A2R12_, A1R21_;
};

cplx one_form_nu(int i, const SheetPoint &x, const SewingPoint &p, int K = default_K);
cplx omega2(const SheetPoint &x, const SheetPoint &y, const SewingPoint &p, int K = default_K);
cplx projective_connection(const SheetPoint &x, const SewingPoint &p, int K = default_K);

// Contour integrals of nu_j around the a- and b-cycles of sheet `cycle`.
cplx a_cycle_integral(int cycle, int j, const Sewing &s);
cplx b_cycle_integral(int cycle, int j, const Sewing &s);

// Composite Gauss-Legendre along the straight segment z0 -> z1, panels doubled until stable.
cplx integrate_segment(const std::function<cplx(cplx)> &f, cplx z0, cplx z1, double tol = 1e-8);

// |omega(x, (1,z1)) - omega(x, (2, eps/z1)) (-eps/z1^2)| relative, on the identification annulus.
double overlap_residual(const Sewing &s, const SheetPoint &x, double phase);

} // namespace g2sew

#endif
