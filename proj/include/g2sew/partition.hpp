#ifndef G2SEW_PARTITION_HPP
#define G2SEW_PARTITION_HPP

#include "g2sew/sewing.hpp"
#include "g2sew/theta.hpp"

namespace g2sew {

struct PartitionBreakdown {
    cplx z1_left = 1.0;   // eta(tau1)^{-l}
    cplx z1_right = 1.0;  // eta(tau2)^{-l}
    cplx det_factor = 1.0;    // det(I - A1 A2)^{-l/2}
    cplx theta_factor = 1.0;  // exp(i pi a.Omega.a), theta_L or the orbifold theta with its phase
};

struct Truncation {
    int K = default_K;
    int D = 0;
    int N = default_q_order;
    double cutoff = 0.0;
};

struct PartitionResult {
    cplx value;
    PartitionBreakdown breakdown;
    Truncation truncation;
    int rank = 1;
    double est_error = 0.0;  // change against K - 4
};

PartitionResult z2_heisenberg(const SewingPoint &p, int K = default_K, int rank = 1);
PartitionResult z2_module_pair(double alpha1, double alpha2, const SewingPoint &p, int K = default_K);
PartitionResult z2_lattice(const EvenLattice &L, const SewingPoint &p, int K = default_K, double R = 0.0);
PartitionResult z2_fermion_orbifold(const Characteristics &ch, const SewingPoint &p, int K = default_K, double R = 0.0);

// base.value over the rank-matched Heisenberg value
cplx z2_normalized(const PartitionResult &base, const SewingPoint &p, int K = default_K);

} // namespace g2sew

#endif
