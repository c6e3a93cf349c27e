#include "g2sew/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

namespace g2sew {

namespace {

constexpr double ln10 = 2.302585092994045684;
constexpr int exact_bernoulli_limit = 64;

std::vector<Rational> bernoulli_table(int kmax)
{
    using boost::multiprecision::cpp_int;
    std::vector<Rational> b(kmax + 1);
    b[0] = 1;
    for (int m = 1; m <= kmax; ++m) {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rational acc = 0;
        cpp_int binom = 1;  // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        b[m] = -acc / (m + 1);
    }
    return b;
}

const std::vector<Rational> &cached_bernoulli()
{
    static const std::vector<Rational> table = bernoulli_table(exact_bernoulli_limit);
    return table;
}

// Eulerian numbers A(s, m), m = 0..s-1, for s = 0..smax.
const std::vector<std::vector<double>> &eulerian_rows()
{
    static const std::vector<std::vector<double>> rows = [] {
        constexpr int smax = 128;
        std::vector<std::vector<double>> a(smax + 1);
        a[0] = {1.0};
        a[1] = {1.0};
        for (int s = 2; s <= smax; ++s) {
            a[s].assign(s, 0.0);
            for (int m = 0; m < s; ++m) {
                double v = 0.0;
                if (m < s - 1) v += (m + 1) * a[s - 1][m];
                if (m >= 1) v += (s - m) * a[s - 1][m - 1];
                a[s][m] = v;
            }
        }
        return a;
    }();
    return rows;
}

// Li_{-s}(e^w) for s = 1..smax with Re w <= 0; entry s of the result.
void negative_polylogs(cplx w, int smax, std::vector<cplx> &out)
{
    const auto &euler = eulerian_rows();
    const cplx x = std::exp(w);
    const cplx one_minus_x = -cexpm1(w);
    const cplx inv = 1.0 / one_minus_x;
    cplx denom = inv * inv;  // (1-x)^{-(s+1)} for s = 1
    out.assign(smax + 1, cplx{});
    for (int s = 1; s <= smax; ++s) {
        const auto &row = euler[s];
        cplx poly = 0.0;
        for (int m = s - 1; m >= 0; --m) poly = poly * x + row[m];
        out[s] = x * poly * denom;
        denom *= inv;
    }
}

// z shifted by lattice vectors so that |Re z| <= pi Im tau and |Im z| <= pi; returns the
// number of 2 pi i tau steps added.
long reduce_to_cell(const TorusModulus &m, cplx &z)
{
    const double period = 2.0 * pi * m.tau().imag();
    const long shift = std::lround(z.real() / period);
    z += two_pi_i * m.tau() * static_cast<double>(shift);
    const long turns = std::lround(z.imag() / (2.0 * pi));
    z -= two_pi_i * static_cast<double>(turns);
    return shift;
}

double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// E_j(tau) * exp(j * log_w) with the Lambert sum carried to convergence and at least
// min_terms divisors; evaluated in log space so that large j neither overflows nor underflows.
cplx eisenstein_scaled(int j, const TorusModulus &m, cplx log_w, int min_terms)
{
    if (j % 2 != 0) return 0.0;
    cplx total;
    if (j <= exact_bernoulli_limit) {
        total = eisenstein_constant(j) * std::exp(static_cast<double>(j) * log_w);
    }
    else {
        const double zeta = boost::math::zeta(static_cast<double>(j));
        const double sign = (j / 2) % 2 == 0 ? 1.0 : -1.0;
        total = sign * 2.0 * zeta
            * std::exp(static_cast<double>(j) * (log_w - std::log(2.0 * pi)));
    }
    const cplx log_q = m.log_q();
    const double lg = std::lgamma(static_cast<double>(j));
    const double decay = -log_q.real();
    const double peak = (j - 1) / decay;
    double largest = std::abs(total);
    for (long d = 1;; ++d) {
        const double ld = std::log(static_cast<double>(d));
        const cplx expo = (j - 1) * ld - lg + static_cast<double>(j) * log_w
            + static_cast<double>(d) * log_q;
        const cplx term = 2.0 * std::exp(expo) / (-cexpm1(static_cast<double>(d) * log_q));
        total += term;
        const double mag = std::abs(term);
        largest = std::max(largest, mag);
        if (d >= min_terms && d > peak && mag <= 1e-20 * largest) break;
        if (d > 10000000) throw NonConvergentError("Eisenstein Lambert sum did not converge");
    }
    return total;
}

} // namespace

TorusModulus::TorusModulus(cplx tau) : tau_(tau)
{
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        throw DomainError("modulus must lie in the upper half plane");
    q_ = std::exp(two_pi_i * tau);
}

QSeries::QSeries(int order, boost::rational<long> lead)
    : coeffs(static_cast<std::size_t>(std::max(order, 0)) + 1, cplx{}), leading_exponent(lead)
{
    if (order < 0) throw DomainError("q-series order must be non-negative");
}

QSeries QSeries::operator+(const QSeries &rhs) const
{
    if (leading_exponent != rhs.leading_exponent)
        throw DomainError("cannot add q-series with different leading exponents");
    QSeries out(std::min(order(), rhs.order()), leading_exponent);
    for (int n = 0; n <= out.order(); ++n) out.coeffs[n] = coeffs[n] + rhs.coeffs[n];
    return out;
}

QSeries QSeries::operator-(const QSeries &rhs) const { return *this + rhs * cplx(-1.0); }

QSeries QSeries::operator*(const QSeries &rhs) const
{
    QSeries out(std::min(order(), rhs.order()), leading_exponent + rhs.leading_exponent);
    for (int a = 0; a <= out.order(); ++a)
        for (int b = 0; a + b <= out.order(); ++b) out.coeffs[a + b] += coeffs[a] * rhs.coeffs[b];
    return out;
}

QSeries QSeries::operator*(cplx s) const
{
    QSeries out = *this;
    for (auto &c : out.coeffs) c *= s;
    return out;
}

QSeries QSeries::inverse() const
{
    if (coeffs[0] == cplx{}) throw DomainError("q-series with zero constant term is not invertible");
    QSeries out(order(), -leading_exponent);
    out.coeffs[0] = 1.0 / coeffs[0];
    for (int n = 1; n <= order(); ++n) {
        cplx acc = 0.0;
        for (int j = 1; j <= n; ++j) acc += coeffs[j] * out.coeffs[n - j];
        out.coeffs[n] = -acc / coeffs[0];
    }
    return out;
}

cplx QSeries::evaluate(const TorusModulus &m) const
{
    cplx acc = 0.0;
    for (int n = order(); n >= 0; --n) acc = acc * m.q() + coeffs[n];
    const double lead = static_cast<double>(leading_exponent.numerator())
        / static_cast<double>(leading_exponent.denominator());
    return std::exp(m.log_q() * lead) * acc;
}

Rational bernoulli(int k)
{
    if (k < 0) throw DomainError("Bernoulli index must be non-negative");
    if (k <= exact_bernoulli_limit) return cached_bernoulli()[k];
    if (k % 2 == 1) return Rational(0);
    return bernoulli_table(k)[k];
}

double eisenstein_constant(int k)
{
    if (k < 1) throw DomainError("Eisenstein weight must be positive");
    if (k % 2 == 1) return 0.0;
    if (k <= exact_bernoulli_limit) {
        Rational v = -bernoulli(k);
        for (int i = 2; i <= k; ++i) v /= i;
        return v.convert_to<double>();
    }
    const double zeta = boost::math::zeta(static_cast<double>(k));
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * 2.0 * zeta * std::exp(-k * std::log(2.0 * pi));
}

QSeries eisenstein_qseries(int k, int N)
{
    if (k < 1) throw DomainError("Eisenstein weight must be positive");
    QSeries s(N);
    if (k % 2 == 1) return s;
    s.coeffs[0] = eisenstein_constant(k);
    const double lg = std::lgamma(static_cast<double>(k));
    for (int d = 1; d <= N; ++d) {
        const double w = 2.0 * std::exp((k - 1) * std::log(static_cast<double>(d)) - lg);
        for (int n = d; n <= N; n += d) s.coeffs[n] += w;
    }
    return s;
}

cplx eval_eisenstein(int k, const TorusModulus &m, int N)
{
    if (k < 1) throw DomainError("Eisenstein weight must be positive");
    if (!(std::abs(m.q()) < 1.0)) throw NonConvergentError("|q| >= 1");
    if (k % 2 == 1) return 0.0;
    const cplx log_q = m.log_q();
    const double lg = std::lgamma(static_cast<double>(k));
    cplx acc = eisenstein_constant(k);
    for (int d = 1; d <= N; ++d) {
        const double ld = (k - 1) * std::log(static_cast<double>(d)) - lg;
        for (int j = 1; d * j <= N; ++j)
            acc += 2.0 * std::exp(ld + static_cast<double>(d * j) * log_q);
    }
    return acc;
}

cplx eisenstein(int k, const TorusModulus &m)
{
    if (k < 1) throw DomainError("Eisenstein weight must be positive");
    return eisenstein_scaled(k, m, 0.0, 1);
}

std::vector<cplx> eisenstein_table(int kmax, const TorusModulus &m)
{
    std::vector<cplx> e(static_cast<std::size_t>(std::max(kmax, 0)) + 1, cplx{});
    for (int k = 2; k <= kmax; k += 2) e[k] = eisenstein(k, m);
    return e;
}

QSeries eta_qseries(int N)
{
    QSeries s(N, boost::rational<long>(1, 24));
    s.coeffs[0] = 1.0;
    for (int n = 1; n <= N; ++n)
        for (int j = N; j >= n; --j) s.coeffs[j] -= s.coeffs[j - n];
    return s;
}

cplx dedekind_eta(const TorusModulus &m, int N)
{
    const cplx log_q = m.log_q();
    cplx prod = 1.0;
    for (int n = 1; n <= N; ++n) prod *= -cexpm1(static_cast<double>(n) * log_q);
    return std::exp(log_q / 24.0) * prod;
}

int eta_order_for(const TorusModulus &m)
{
    const double decay = -m.log_q().real();
    const int n = static_cast<int>(std::ceil(17.0 * ln10 / decay));
    return std::max(default_q_order, n);
}

cplx elliptic_P(int k, const TorusModulus &m, cplx z, int N)
{
    if (k < 1) throw DomainError("P_k requires k >= 1");
    if (z == cplx{}) throw PoleError("P_k has a pole at z = 0");
    const double dist = min_lattice_distance(m);
    const double r = std::abs(z);
    if (r >= dist) throw OutOfDiskError("|z| must be smaller than the minimal lattice distance");

    const double log_rho = std::log(r / dist);
    const cplx log_z = std::log(z);
    cplx sum = 0.0;
    for (int j = std::max(k, 2);; ++j) {
        if (j % 2 == 0) {
            const cplx ez = eisenstein_scaled(j, m, log_z, N);
            sum += std::exp(log_binomial(j - 1, k - 1)) * ez;
        }
        // |E_j| z^j is bounded by a few multiples of (|z|/D)^j
        const double bound = log_binomial(j, k - 1) + j * log_rho + std::log(12.0);
        if (j > k + 2 && bound < -40.0) break;
        if (j > 200000) throw NonConvergentError("Laurent series of P_k did not converge");
    }
    const cplx zk = std::pow(z, -k);
    return zk + (k % 2 == 0 ? 1.0 : -1.0) * sum * zk;
}

std::vector<cplx> elliptic_P_torus_table(int kmax, const TorusModulus &m, cplx z)
{
    if (kmax < 2) throw DomainError("table requires kmax >= 2");
    if (kmax - 1 > 128) throw DomainError("P_k table limited to k <= 129");
    reduce_to_cell(m, z);
    if (z == cplx{}) throw PoleError("P_k has a pole at lattice points");

    const int smax = kmax - 1;
    const cplx log_q = m.log_q();
    std::vector<cplx> sum(smax + 1, cplx{});
    std::vector<cplx> li;

    // n = 0 term, reflected into the closed unit disk when needed
    if (z.real() <= 0.0) {
        negative_polylogs(z, smax, li);
        for (int s = 1; s <= smax; ++s) sum[s] += li[s];
    }
    else {
        negative_polylogs(-z, smax, li);
        for (int s = 1; s <= smax; ++s) sum[s] += (s % 2 == 1 ? 1.0 : -1.0) * li[s];
    }
    for (long n = 1;; ++n) {
        const cplx up = static_cast<double>(n) * log_q + z;
        const cplx down = static_cast<double>(n) * log_q - z;
        negative_polylogs(up, smax, li);
        for (int s = 1; s <= smax; ++s) sum[s] += li[s];
        negative_polylogs(down, smax, li);
        for (int s = 1; s <= smax; ++s) sum[s] += (s % 2 == 1 ? 1.0 : -1.0) * li[s];
        if (std::max(up.real(), down.real()) < -46.0) break;
        if (n > 1000000) throw NonConvergentError("torus q-expansion did not converge");
    }

    std::vector<cplx> out(kmax + 1, cplx{});
    double fact = 1.0;  // (k-1)!
    for (int k = 2; k <= kmax; ++k) {
        fact *= (k - 1);
        out[k] = (k % 2 == 0 ? 1.0 : -1.0) * sum[k - 1] / fact;
    }
    return out;
}

cplx elliptic_P_torus(int k, const TorusModulus &m, cplx z)
{
    if (k < 1) throw DomainError("P_k requires k >= 1");
    if (k >= 2) return elliptic_P_torus_table(k, m, z)[k];

    const long shift = reduce_to_cell(m, z);
    if (z == cplx{}) throw PoleError("P_1 has a pole at lattice points");
    const cplx log_q = m.log_q();
    cplx acc = -0.5 - std::exp(z) / (-cexpm1(z));
    for (long n = 1;; ++n) {
        const cplx up = static_cast<double>(n) * log_q + z;
        const cplx down = static_cast<double>(n) * log_q - z;
        acc -= std::exp(up) / (-cexpm1(up)) - std::exp(down) / (-cexpm1(down));
        if (std::max(up.real(), down.real()) < -46.0) break;
        if (n > 1000000) throw NonConvergentError("torus q-expansion did not converge");
    }
    // P_1(z + 2 pi i tau) = P_1(z) - 1
    return acc + static_cast<double>(shift);
}

double binomial_ratio(int k, int l)
{
    if (k < 1 || l < 1) throw DomainError("binomial ratio requires k, l >= 1");
    double r = 1.0;
    for (int i = 1; i <= l - 1; ++i) r *= static_cast<double>(k - 1 + i) / i;
    return r * (k + l - 1);
}

cplx coeff_C(int k, int l, const TorusModulus &m)
{
    if (k < 1 || l < 1) throw DomainError("C(k,l) requires k, l >= 1");
    if ((k + l) % 2 != 0) return 0.0;
    const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * binomial_ratio(k, l) * eisenstein(k + l, m);
}

cplx coeff_D(int k, int l, const TorusModulus &m, cplx z, int N)
{
    if (k < 1 || l < 1) throw DomainError("D(k,l) requires k, l >= 1");
    const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;
    return sign * binomial_ratio(k, l) * elliptic_P(k + l, m, z, N);
}

double min_lattice_distance(const TorusModulus &m)
{
    const cplx tau = m.tau();
    double best = std::min(1.0, std::abs(tau));
    const long mmax = static_cast<long>(std::floor(best / tau.imag()));
    for (long a = 1; a <= mmax; ++a) {
        const double centre = -a * tau.real();
        const long lo = static_cast<long>(std::floor(centre - best));
        const long hi = static_cast<long>(std::ceil(centre + best));
        for (long b = lo; b <= hi; ++b) best = std::min(best, std::abs(static_cast<double>(a) * tau + static_cast<double>(b)));
    }
    return 2.0 * pi * best;
}

} // namespace g2sew
