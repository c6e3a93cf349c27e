#ifndef G2SEW_FOCK_HPP
#define G2SEW_FOCK_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "g2sew/sewing.hpp"

namespace g2sew {

inline constexpr int default_N_max = 8;
inline constexpr int max_fock_order = 12;

// lambda = {1^e1 ... p^ep}; parts maps i -> e_i.
struct FockPartition {
    std::map<int, int> parts;

    int weight() const;  // sum i e_i
    int size() const;    // sum e_i
    // the labeled set Phi_lambda: e_i copies of i, ascending
    std::vector<int> labels() const;
};

std::vector<FockPartition> partitions_of(int n);

// prod_i (-i)^{e_i} e_i!
double liz_norm(const FockPartition &lambda);

using NormFunction = std::function<double(const FockPartition &)>;

struct LabeledInvolution {
    std::vector<std::pair<int, int>> pairing;  // indices into the label list
    std::vector<int> fixed_points;
};

// Visits every involution of {0..n-1}; with fixed_ok[i] false, i may not be fixed.
void for_each_involution(const std::vector<bool> &fixed_ok, const std::function<void(const LabeledInvolution &)> &visit);

// Fixed-point-free involutions (inv1 = false) or Inv_1: fixed points carry label 1.
std::vector<LabeledInvolution> enumerate_involutions(const std::vector<int> &labels, bool inv1);

cplx genus1_onepoint(const FockPartition &lambda, const TorusModulus &m);
cplx genus1_onepoint_module(const FockPartition &lambda, double alpha, const TorusModulus &m);

// coeffs[n] multiplies eps^n; value is the sum at the point's eps.
struct FockSeries {
    std::vector<cplx> coeffs;
    cplx value;
};

FockSeries genus2_Z_direct(const SewingPoint &p, int N_max = default_N_max, const NormFunction &norm = liz_norm);
FockSeries genus2_Z_module_direct(double alpha1, double alpha2, const SewingPoint &p, int N_max = default_N_max,
                                  const NormFunction &norm = liz_norm);
// x1, x2 on sheet 1, inside the Laurent disk of P_k.
FockSeries genus2_twopoint_direct(cplx x1, cplx x2, const SewingPoint &p, int N_max = default_N_max,
                                  const NormFunction &norm = liz_norm);

} // namespace g2sew

#endif
