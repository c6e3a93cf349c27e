#include "g2sew/partition.hpp"

#include <functional>

#include "g2sew/errors.hpp"

namespace g2sew {

namespace {

const cplx I(0.0, 1.0);

using ThetaFactor = std::function<cplx(const SewingPoint &, int K)>;

PartitionResult evaluate(const SewingPoint &p, int K, int rank, const ThetaFactor &theta, int K_low) {
    if (rank < 0) throw DomainError("partition function: rank must be non-negative");
    PartitionResult r;
    r.rank = rank;
    r.truncation.K = K;
    r.breakdown.z1_left = std::pow(dedekind_eta(p.tau1), -rank);
    r.breakdown.z1_right = std::pow(dedekind_eta(p.tau2), -rank);
    r.breakdown.det_factor = std::exp(-0.5 * rank * log_det_I_minus_A1A2(p, K).log_det);
    r.breakdown.theta_factor = theta ? theta(p, K) : cplx(1.0);
    const auto &b = r.breakdown;
    r.value = b.z1_left * b.z1_right * b.det_factor * b.theta_factor;
    if (K_low >= 2) {
        cplx det_low = std::exp(-0.5 * rank * log_det_I_minus_A1A2(p, K_low).log_det);
        cplx th_low = theta ? theta(p, K_low) : cplx(1.0);
        r.est_error = std::abs(b.z1_left * b.z1_right * det_low * th_low - r.value);
    }
    return r;
}

int lower_K(int K) { return K - 4 >= 2 ? K - 4 : 0; }

} // namespace

PartitionResult z2_heisenberg(const SewingPoint &p, int K, int rank) {
    if (rank < 1) throw DomainError("z2_heisenberg: rank must be at least 1");
    return evaluate(p, K, rank, nullptr, lower_K(K));
}

PartitionResult z2_module_pair(double alpha1, double alpha2, const SewingPoint &p, int K) {
    auto theta = [=](const SewingPoint &q, int k) {
        auto Om = period_matrix(q, k);
        cplx aOa = alpha1 * alpha1 * Om.omega11 + 2.0 * alpha1 * alpha2 * Om.omega12 + alpha2 * alpha2 * Om.omega22;
        return std::exp(I * pi * aOa);
    };
    return evaluate(p, K, 1, theta, lower_K(K));
}

PartitionResult z2_lattice(const EvenLattice &L, const SewingPoint &p, int K, double R) {
    double used = 0.0;
    auto theta = [&](const SewingPoint &q, int k) {
        auto t = siegel_theta2(L, period_matrix(q, k).matrix(), R);
        if (k == K) used = t.cutoff;
        return t.value;
    };
    auto r = evaluate(p, K, L.rank(), theta, lower_K(K));
    r.truncation.cutoff = used;
    return r;
}

PartitionResult z2_fermion_orbifold(const Characteristics &ch, const SewingPoint &p, int K, double R) {
    double used = 0.0;
    cplx phase = std::exp(-2.0 * pi * I * (ch.lambda[0] * ch.mu[0] + ch.lambda[1] * ch.mu[1]));
    auto theta = [&](const SewingPoint &q, int k) {
        auto t = riemann_theta2(ch, period_matrix(q, k).matrix(), R);
        if (k == K) used = t.cutoff;
        return phase * t.value;
    };
    auto r = evaluate(p, K, 1, theta, lower_K(K));
    r.truncation.cutoff = used;
    return r;
}

cplx z2_normalized(const PartitionResult &base, const SewingPoint &p, int K) {
    if (base.rank == 0) return base.value;
    return base.value / z2_heisenberg(p, K, base.rank).value;
}

} // namespace g2sew
