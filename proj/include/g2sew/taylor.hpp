#ifndef G2SEW_TAYLOR_HPP
#define G2SEW_TAYLOR_HPP

#include <functional>
#include <vector>

#include "g2sew/series.hpp"

namespace g2sew {

// c_0..c_{M-1} of f(eps) = sum c_n eps^n from M samples on |eps| = r.
std::vector<cplx> taylor_coefficients(const std::function<cplx(cplx)> &f, double r, int M = 64);

struct CoefficientComparison {
    double max_residual = 0.0;  // worst per-coefficient error in units of the tolerance scale
    int worst_order = -1;
    bool pass = false;
};

// Per-coefficient relative comparison through order nmax.  A coefficient whose scaled size
// |c_n| r^n is below 1e-10 of the largest is compared absolutely against tol * max.
CoefficientComparison compare_coefficients(const std::vector<cplx> &a, const std::vector<cplx> &b, double r,
                                           int nmax, double tol);

} // namespace g2sew

#endif
