#include "g2sew/fock.hpp"

#include <algorithm>
#include <string>

#include "g2sew/errors.hpp"

namespace g2sew {

int FockPartition::weight() const {
    int w = 0;
    for (auto [i, e] : parts) w += i * e;
    return w;
}

int FockPartition::size() const {
    int s = 0;
    for (auto [i, e] : parts) s += e;
    return s;
}

std::vector<int> FockPartition::labels() const {
    std::vector<int> out;
    for (auto [i, e] : parts) out.insert(out.end(), e, i);
    return out;
}

namespace {

void partitions_rec(int n, int maxpart, std::map<int, int> &cur, std::vector<FockPartition> &out) {
    if (n == 0) {
        out.push_back({cur});
        return;
    }
    for (int i = std::min(n, maxpart); i >= 1; --i) {
        ++cur[i];
        partitions_rec(n - i, i, cur, out);
        if (--cur[i] == 0) cur.erase(i);
    }
}

void involution_rec(std::vector<bool> &used, const std::vector<bool> &fixed_ok, LabeledInvolution &cur,
                    const std::function<void(const LabeledInvolution &)> &visit) {
    int n = static_cast<int>(used.size());
    int i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
        visit(cur);
        return;
    }
    used[i] = true;
    if (fixed_ok[i]) {
        cur.fixed_points.push_back(i);
        involution_rec(used, fixed_ok, cur, visit);
        cur.fixed_points.pop_back();
    }
    for (int j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        cur.pairing.emplace_back(i, j);
        involution_rec(used, fixed_ok, cur, visit);
        cur.pairing.pop_back();
        used[j] = false;
    }
    used[i] = false;
}

// Sum over involutions of prod W(i,j) over pairs times prod d_i over fixed points.
cplx involution_sum(const CMatrix &W, const std::vector<cplx> &d) {
    int n = static_cast<int>(d.size());
    std::vector<bool> fixed_ok(n);
    for (int i = 0; i < n; ++i) fixed_ok[i] = d[i] != cplx(0.0);
    cplx total = 0.0;
    for_each_involution(fixed_ok, [&](const LabeledInvolution &inv) {
        cplx term = 1.0;
        for (auto [i, j] : inv.pairing) term *= W(i, j);
        for (int i : inv.fixed_points) term *= d[i];
        total += term;
    });
    return total;
}

CMatrix pair_weights(const std::vector<int> &labels, const TorusModulus &m) {
    int n = static_cast<int>(labels.size());
    CMatrix W = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) W(i, j) = W(j, i) = coeff_C(labels[i], labels[j], m);
    return W;
}

// sum over involutions of Phi_lambda, weight C(r,s) per pair and alpha per fixed label 1
cplx gamma_sum(const FockPartition &lambda, double alpha, bool inv1, const TorusModulus &m) {
    auto labels = lambda.labels();
    std::vector<cplx> d(labels.size(), 0.0);
    if (inv1)
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == 1) d[i] = alpha;
    if (!inv1 && labels.size() % 2 == 1) return 0.0;
    return involution_sum(pair_weights(labels, m), d);
}

cplx q_power(double alpha, const TorusModulus &m) { return std::exp(0.5 * alpha * alpha * m.log_q()); }

void check_order(int N_max) {
    if (N_max < 0 || N_max > max_fock_order)
        throw DomainError("fock oracle: N_max must lie in [0, " + std::to_string(max_fock_order) + "]");
}

cplx evaluate(const std::vector<cplx> &c, cplx eps) {
    cplx v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * eps + *it;
    return v;
}

} // namespace

std::vector<FockPartition> partitions_of(int n) {
    std::vector<FockPartition> out;
    if (n < 0) return out;
    std::map<int, int> cur;
    partitions_rec(n, n, cur, out);
    return out;
}

double liz_norm(const FockPartition &lambda) {
    double v = 1.0;
    for (auto [i, e] : lambda.parts) {
        for (int t = 0; t < e; ++t) v *= -static_cast<double>(i);
        for (int t = 2; t <= e; ++t) v *= t;
    }
    return v;
}

void for_each_involution(const std::vector<bool> &fixed_ok, const std::function<void(const LabeledInvolution &)> &visit) {
    std::vector<bool> used(fixed_ok.size(), false);
    LabeledInvolution cur;
    involution_rec(used, fixed_ok, cur, visit);
}

std::vector<LabeledInvolution> enumerate_involutions(const std::vector<int> &labels, bool inv1) {
    std::vector<bool> fixed_ok(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) fixed_ok[i] = inv1 && labels[i] == 1;
    std::vector<LabeledInvolution> out;
    for_each_involution(fixed_ok, [&](const LabeledInvolution &inv) { out.push_back(inv); });
    return out;
}

cplx genus1_onepoint(const FockPartition &lambda, const TorusModulus &m) {
    return gamma_sum(lambda, 0.0, false, m) / dedekind_eta(m);
}

cplx genus1_onepoint_module(const FockPartition &lambda, double alpha, const TorusModulus &m) {
    return q_power(alpha, m) * gamma_sum(lambda, alpha, true, m) / dedekind_eta(m);
}

FockSeries genus2_Z_direct(const SewingPoint &p, int N_max, const NormFunction &norm) {
    check_order(N_max);
    TorusModulus m1(p.tau1), m2(p.tau2);
    cplx pref = 1.0 / (dedekind_eta(m1) * dedekind_eta(m2));
    FockSeries out;
    out.coeffs.assign(N_max + 1, 0.0);
    for (int n = 0; n <= N_max; ++n)
        for (const auto &lam : partitions_of(n))
            out.coeffs[n] += gamma_sum(lam, 0.0, false, m1) * gamma_sum(lam, 0.0, false, m2) / norm(lam);
    for (auto &c : out.coeffs) c *= pref;
    out.value = evaluate(out.coeffs, p.eps);
    return out;
}

FockSeries genus2_Z_module_direct(double alpha1, double alpha2, const SewingPoint &p, int N_max,
                                  const NormFunction &norm) {
    check_order(N_max);
    TorusModulus m1(p.tau1), m2(p.tau2);
    cplx pref = q_power(alpha1, m1) * q_power(alpha2, m2) / (dedekind_eta(m1) * dedekind_eta(m2));
    FockSeries out;
    out.coeffs.assign(N_max + 1, 0.0);
    for (int n = 0; n <= N_max; ++n)
        for (const auto &lam : partitions_of(n))
            out.coeffs[n] += gamma_sum(lam, alpha1, true, m1) * gamma_sum(lam, alpha2, true, m2) / norm(lam);
    for (auto &c : out.coeffs) c *= pref;
    out.value = evaluate(out.coeffs, p.eps);
    return out;
}

FockSeries genus2_twopoint_direct(cplx x1, cplx x2, const SewingPoint &p, int N_max, const NormFunction &norm) {
    check_order(N_max);
    TorusModulus m1(p.tau1), m2(p.tau2);
    cplx pref = 1.0 / (dedekind_eta(m1) * dedekind_eta(m2));
    std::vector<cplx> P1(N_max + 2), P2(N_max + 2);
    for (int k = 2; k <= N_max + 1; ++k) {
        P1[k] = elliptic_P(k, m1, x1);
        P2[k] = elliptic_P(k, m1, x2);
    }
    cplx P12 = elliptic_P(2, m1, x1 - x2);
    FockSeries out;
    out.coeffs.assign(N_max + 1, 0.0);
    for (int n = 0; n <= N_max; ++n)
        for (const auto &lam : partitions_of(n)) {
            auto labels = lam.labels();
            int L = static_cast<int>(labels.size());
            // nodes 0, 1 are x1, x2 with label 1; the rest is Phi_lambda
            CMatrix W = CMatrix::Zero(L + 2, L + 2);
            W.bottomRightCorner(L, L) = pair_weights(labels, m1);
            W(0, 1) = W(1, 0) = P12;
            for (int j = 0; j < L; ++j) {
                int s = labels[j];
                W(0, j + 2) = W(j + 2, 0) = static_cast<double>(s) * P1[s + 1];
                W(1, j + 2) = W(j + 2, 1) = static_cast<double>(s) * P2[s + 1];
            }
            cplx left = involution_sum(W, std::vector<cplx>(L + 2, 0.0));
            out.coeffs[n] += left * gamma_sum(lam, 0.0, false, m2) / norm(lam);
        }
    for (auto &c : out.coeffs) c *= pref;
    out.value = evaluate(out.coeffs, p.eps);
    return out;
}

} // namespace g2sew
