#ifndef G2SEW_NPOINT_HPP
#define G2SEW_NPOINT_HPP

#include <array>
#include <vector>

#include "g2sew/partition.hpp"

namespace g2sew {

struct FormValue {
    cplx coefficient;
    std::vector<int> degree_per_point;
    std::vector<SheetPoint> attachments;
};

using Alpha = std::array<double, 2>;

// Matching sum of omega2 over the points; throws PoleError on coincident points of one sheet.
FormValue sym_n_omega(const std::vector<SheetPoint> &xs, const Sewing &s);
FormValue sym_n_omega(const std::vector<SheetPoint> &xs, const SewingPoint &p, int K = default_K);
FormValue heisenberg_npoint(const std::vector<SheetPoint> &xs, const SewingPoint &p, int K = default_K);

// nu_alpha = alpha1 nu_1 + alpha2 nu_2
cplx nu_alpha(const Alpha &alpha, const SheetPoint &x, const Sewing &s);
// Involution sum with omega2 on pairs and nu_alpha on fixed points.
FormValue sym_n_omega_nu(const Alpha &alpha, const std::vector<SheetPoint> &xs, const Sewing &s);
FormValue sym_n_omega_nu(const Alpha &alpha, const std::vector<SheetPoint> &xs, const SewingPoint &p,
                         int K = default_K);
FormValue heisenberg_npoint_module(const Alpha &alpha, const std::vector<SheetPoint> &xs, const SewingPoint &p,
                                   int K = default_K);

FormValue virasoro_onepoint(const SheetPoint &x, const SewingPoint &p, int K = default_K);
FormValue virasoro_onepoint_module(const Alpha &alpha, const SheetPoint &x, const SewingPoint &p, int K = default_K);
// Sum over the lattice of the module values, (1/2) nu_(a,b)^2 + (l/12) s, times Z_{M^l}.
FormValue virasoro_onepoint_lattice(const EvenLattice &L, const SheetPoint &x, const SewingPoint &p,
                                    int K = default_K, double R = 0.0);

// Z_M (D + c/12 s) applied term-wise to exp(i pi a.Omega.a) or theta_L, against the direct value.
double ward_identity_check(const Alpha &alpha, const SheetPoint &x, const SewingPoint &p, int K = default_K);
double ward_identity_check(const EvenLattice &L, const SheetPoint &x, const SewingPoint &p, int K = default_K,
                           double R = 0.0);

// The 2-point form with y on sheet 1 against y moved to sheet 2 at eps/y, with the Jacobian.
// Throws OutOfDiskError unless y lies in the identification annulus.
double form_transport_check(const SheetPoint &x, cplx y, const SewingPoint &p, int K = default_K);

} // namespace g2sew

#endif
