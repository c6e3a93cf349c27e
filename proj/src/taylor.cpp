#include "g2sew/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace g2sew {

std::vector<cplx> taylor_coefficients(const std::function<cplx(cplx)> &f, double r, int M)
{
    if (!(r > 0.0) || M < 1) throw DomainError("sampling circle needs r > 0 and M >= 1");
    std::vector<cplx> samples(M);
    for (int j = 0; j < M; ++j) samples[j] = f(std::polar(r, 2.0 * pi * j / M));
    std::vector<cplx> c(M);
    for (int n = 0; n < M; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < M; ++j) acc += samples[j] * std::polar(1.0, -2.0 * pi * double(j) * n / M);
        c[n] = acc / double(M) / std::pow(r, n);
    }
    return c;
}

CoefficientComparison compare_coefficients(const std::vector<cplx> &a, const std::vector<cplx> &b, double r,
                                           int nmax, double tol)
{
    const int n_top = std::min<int>(nmax, static_cast<int>(std::min(a.size(), b.size())) - 1);
    double scale = 0.0;
    for (int n = 0; n <= n_top; ++n)
        scale = std::max({scale, std::abs(a[n]) * std::pow(r, n), std::abs(b[n]) * std::pow(r, n)});
    CoefficientComparison out;
    for (int n = 0; n <= n_top; ++n) {
        const double rn = std::pow(r, n);
        const double size = std::max(std::abs(a[n]), std::abs(b[n])) * rn;
        const double diff = std::abs(a[n] - b[n]) * rn;
        const double res = size < 1e-10 * scale ? diff / (tol * scale) : diff / (tol * size);
        if (res > out.max_residual || out.worst_order < 0) {
            out.max_residual = std::max(out.max_residual, res);
            out.worst_order = n;
        }
    }
    out.pass = out.max_residual <= 1.0;
    return out;
}

} // namespace g2sew
