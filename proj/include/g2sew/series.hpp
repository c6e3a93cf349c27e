#ifndef G2SEW_SERIES_HPP
#define G2SEW_SERIES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "g2sew/errors.hpp"

namespace g2sew {

using cplx = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int default_q_order = 40;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx two_pi_i{0.0, 2.0 * pi};

// exp(w) - 1 without cancellation near w = 0.
inline cplx cexpm1(cplx w)
{
    const double s = std::sin(0.5 * w.imag());
    return {std::expm1(w.real()) * std::cos(w.imag()) - 2.0 * s * s, std::exp(w.real()) * std::sin(w.imag())};
}

// A point tau of the upper half plane together with q = exp(2 pi i tau).
class TorusModulus {
public:
    explicit TorusModulus(cplx tau);

    cplx tau() const noexcept { return tau_; }
    cplx q() const noexcept { return q_; }
    // log q = 2 pi i tau, exact (no branch choice involved)
    cplx log_q() const noexcept { return two_pi_i * tau_; }

private:
    cplx tau_;
    cplx q_;
};

// Truncated power series c_0 + c_1 q + ... + c_N q^N, multiplied by q^leading_exponent.
struct QSeries {
    std::vector<cplx> coeffs;
    boost::rational<long> leading_exponent{0};

    QSeries() : coeffs(1, cplx{}) {}
    explicit QSeries(int order, boost::rational<long> lead = 0);

    int order() const noexcept { return static_cast<int>(coeffs.size()) - 1; }

    QSeries operator+(const QSeries &rhs) const;
    QSeries operator-(const QSeries &rhs) const;
    QSeries operator*(const QSeries &rhs) const;
    QSeries operator*(cplx s) const;
    // Multiplicative inverse; the constant coefficient must be nonzero.
    QSeries inverse() const;

    // Value at tau; fractional prefactors use exp(2 pi i tau * leading_exponent).
    cplx evaluate(const TorusModulus &m) const;
};

// Exact Bernoulli number with B_1 = -1/2, B_2 = 1/6.
Rational bernoulli(int k);

// -B_k / k!, the constant term of E_k (zero for odd k).
double eisenstein_constant(int k);

// -B_k/k! + (2/(k-1)!) sum_{n<=N} sigma_{k-1}(n) q^n for even k, zero series for odd k.
QSeries eisenstein_qseries(int k, int N);

// E_k(tau) truncated at q^N.
cplx eval_eisenstein(int k, const TorusModulus &m, int N = default_q_order);

// E_k(tau) with the Lambert sum carried until its tail is below double precision.
cplx eisenstein(int k, const TorusModulus &m);

// E_0..E_kmax (index = weight; E_0 and odd weights are returned as 0).
std::vector<cplx> eisenstein_table(int kmax, const TorusModulus &m);

// q^{1/24} prod_{n=1}^{N} (1 - q^n) as a q-series of order N.
QSeries eta_qseries(int N);

cplx dedekind_eta(const TorusModulus &m, int N = default_q_order);

// Smallest order N with |q|^N below 1e-17, never less than default_q_order.
int eta_order_for(const TorusModulus &m);

// Laurent evaluation of P_k(tau, z) about z = 0; valid for 0 < |z| < D(q).
cplx elliptic_P(int k, const TorusModulus &m, cplx z, int N = default_q_order);

// Global evaluation of P_k(tau, z) on the whole torus from its q-expansion in exp(z).
// For k >= 2 the function is doubly periodic; P_1(z + 2 pi i tau) = P_1(z) - 1.
cplx elliptic_P_torus(int k, const TorusModulus &m, cplx z);

// P_k(tau, z) for k = 2..kmax; entry k of the result holds P_k (entries 0 and 1 unused).
std::vector<cplx> elliptic_P_torus_table(int kmax, const TorusModulus &m, cplx z);

// (k+l-1)! / ((k-1)! (l-1)!) computed multiplicatively.
double binomial_ratio(int k, int l);

cplx coeff_C(int k, int l, const TorusModulus &m);
cplx coeff_D(int k, int l, const TorusModulus &m, cplx z, int N = default_q_order);

// min |lambda| over nonzero lambda in 2 pi i (Z tau + Z).
double min_lattice_distance(const TorusModulus &m);

} // namespace g2sew

#endif
