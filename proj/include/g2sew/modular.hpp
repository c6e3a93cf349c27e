#ifndef G2SEW_MODULAR_HPP
#define G2SEW_MODULAR_HPP

#include <Eigen/Dense>

#include "g2sew/partition.hpp"

namespace g2sew {

using SL2 = Eigen::Matrix2i;
using Sp4 = Eigen::Matrix4i;

SL2 sl2_T();
SL2 sl2_S();

// (gamma1, gamma2) beta^beta_power; acts on a point as (gamma1, gamma2) after beta^beta_power.
struct GElement {
    SL2 gamma1 = SL2::Identity();
    SL2 gamma2 = SL2::Identity();
    int beta_power = 0;

    GElement() = default;
    GElement(SL2 g1, SL2 g2, int b = 0);  // throws DomainError unless det = 1 and b in {0, 1}
    static GElement beta() { return {SL2::Identity(), SL2::Identity(), 1}; }
};

GElement compose(const GElement &g, const GElement &h);

SewingPoint act_on_domain(const GElement &g, const SewingPoint &p);

Sp4 embed_sp4(const GElement &g);
bool is_symplectic(const Sp4 &M);
// (A Omega + B)(C Omega + D)^{-1}; SingularMatrixError when C Omega + D is singular
Eigen::Matrix2cd act_on_H2(const Sp4 &M, const Eigen::Matrix2cd &Omega);
cplx automorphy_factor(const Sp4 &M, const Eigen::Matrix2cd &Omega);  // det(C Omega + D)

// Nearest twelfth root of unity, InconsistencyError if farther than 1e-6.
cplx snap_to_twelfth_root(cplx z);

cplx chi(const SL2 &gamma);
cplx chi2(const GElement &g);

// max |Omega(g.p) - g.Omega(p)|
double check_equivariance(const GElement &g, const SewingPoint &p, int K = default_K);

struct AutomorphyResult {
    double residual = 0.0;
    cplx character = 1.0;
};

// rank 2: ratio Z(g.p) det(C Omega + D) / Z(p) snapped and compared with chi2(g);
// rank 24: |ratio with det^12 - 1|.  Other ranks are rejected.
AutomorphyResult check_automorphy(const GElement &g, const SewingPoint &p, int K = default_K, int rank = 2);
// relative |theta_L(Omega(g.p)) - theta_L(g.Omega(p))|
double check_lattice_automorphy(const GElement &g, const EvenLattice &L, const SewingPoint &p, int K = default_K);

} // namespace g2sew

#endif
