#include "g2sew/npoint.hpp"

#include <cmath>

#include "g2sew/errors.hpp"
#include "g2sew/fock.hpp"

namespace g2sew {

namespace {

const cplx I(0.0, 1.0);

void check_distinct(const std::vector<SheetPoint> &xs) {
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (xs[i].sheet == xs[j].sheet && std::abs(xs[i].z - xs[j].z) < 1e-12)
                throw PoleError("n-point form: coincident insertion points");
}

FormValue make_form(const std::vector<SheetPoint> &xs, int degree) {
    return {0.0, std::vector<int>(xs.size(), degree), xs};
}

// sum over involutions of prod omega2 over pairs and prod fixed over fixed points
cplx involution_form(const std::vector<SheetPoint> &xs, const Sewing &s, const std::vector<cplx> *fixed) {
    int n = static_cast<int>(xs.size());
    CMatrix W(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) W(i, j) = s.omega2(xs[i], xs[j]);
    std::vector<bool> fixed_ok(n, fixed != nullptr);
    cplx total = 0.0;
    for_each_involution(fixed_ok, [&](const LabeledInvolution &inv) {
        cplx t = 1.0;
        for (auto [i, j] : inv.pairing) t *= W(i, j);
        for (int i : inv.fixed_points) t *= (*fixed)[i];
        total += t;
    });
    return total;
}

cplx half_nu_square(const Eigen::Matrix2d &G, cplx nu1, cplx nu2) {
    return 0.5 * (G(0, 0) * nu1 * nu1 + 2.0 * G(0, 1) * nu1 * nu2 + G(1, 1) * nu2 * nu2);
}

double relative(cplx a, cplx b) {
    double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

FormValue sym_n_omega(const std::vector<SheetPoint> &xs, const Sewing &s) {
    check_distinct(xs);
    auto f = make_form(xs, 1);
    f.coefficient = xs.size() % 2 == 1 ? cplx(0.0) : involution_form(xs, s, nullptr);
    return f;
}

FormValue sym_n_omega(const std::vector<SheetPoint> &xs, const SewingPoint &p, int K) {
    return sym_n_omega(xs, Sewing(p, K));
}

FormValue heisenberg_npoint(const std::vector<SheetPoint> &xs, const SewingPoint &p, int K) {
    auto f = sym_n_omega(xs, p, K);
    f.coefficient *= z2_heisenberg(p, K).value;
    return f;
}

cplx nu_alpha(const Alpha &alpha, const SheetPoint &x, const Sewing &s) {
    return alpha[0] * s.nu(1, x) + alpha[1] * s.nu(2, x);
}

FormValue sym_n_omega_nu(const Alpha &alpha, const std::vector<SheetPoint> &xs, const Sewing &s) {
    check_distinct(xs);
    auto f = make_form(xs, 1);
    if (alpha[0] == 0.0 && alpha[1] == 0.0) {
        f.coefficient = sym_n_omega(xs, s).coefficient;
        return f;
    }
    std::vector<cplx> nus;
    for (const auto &x : xs) nus.push_back(nu_alpha(alpha, x, s));
    f.coefficient = involution_form(xs, s, &nus);
    return f;
}

FormValue sym_n_omega_nu(const Alpha &alpha, const std::vector<SheetPoint> &xs, const SewingPoint &p, int K) {
    return sym_n_omega_nu(alpha, xs, Sewing(p, K));
}

FormValue heisenberg_npoint_module(const Alpha &alpha, const std::vector<SheetPoint> &xs, const SewingPoint &p,
                                   int K) {
    auto f = sym_n_omega_nu(alpha, xs, p, K);
    f.coefficient *= z2_module_pair(alpha[0], alpha[1], p, K).value;
    return f;
}

FormValue virasoro_onepoint(const SheetPoint &x, const SewingPoint &p, int K) {
    Sewing s(p, K);
    FormValue f{s.projective_connection(x) / 12.0 * z2_heisenberg(p, K).value, {2}, {x}};
    return f;
}

FormValue virasoro_onepoint_module(const Alpha &alpha, const SheetPoint &x, const SewingPoint &p, int K) {
    Sewing s(p, K);
    cplx nu = nu_alpha(alpha, x, s);
    cplx c = 0.5 * nu * nu + s.projective_connection(x) / 12.0;
    return {c * z2_module_pair(alpha[0], alpha[1], p, K).value, {2}, {x}};
}

FormValue virasoro_onepoint_lattice(const EvenLattice &L, const SheetPoint &x, const SewingPoint &p, int K, double R) {
    Sewing s(p, K);
    auto Om = s.period().matrix();
    cplx nu1 = s.nu(1, x), nu2 = s.nu(2, x), sx = s.projective_connection(x);
    int l = L.rank();
    if (R <= 0.0) R = siegel_theta2(L, Om).cutoff;
    auto V = lattice_vectors(L.gram, R);
    cplx sum = 0.0;
    for (const auto &a : V)
        for (const auto &b : V) {
            Eigen::Matrix2d G;
            G << L.norm(a), L.inner(a, b), L.inner(a, b), L.norm(b);
            cplx e = std::exp(I * pi * (G(0, 0) * Om(0, 0) + 2.0 * G(0, 1) * Om(0, 1) + G(1, 1) * Om(1, 1)));
            sum += (half_nu_square(G, nu1, nu2) + double(l) / 12.0 * sx) * e;
        }
    cplx Z = l == 0 ? cplx(1.0) : z2_heisenberg(p, K, l).value;
    return {sum * Z, {2}, {x}};
}

double ward_identity_check(const Alpha &alpha, const SheetPoint &x, const SewingPoint &p, int K) {
    Sewing s(p, K);
    PeriodMatrix Om = s.period();
    cplx nu[2] = {s.nu(1, x), s.nu(2, x)};
    cplx aOa = alpha[0] * alpha[0] * Om.omega11 + 2.0 * alpha[0] * alpha[1] * Om.omega12 +
               alpha[1] * alpha[1] * Om.omega22;
    cplx target = std::exp(I * pi * aOa);
    // d/dOmega_ij of the exponent, Omega_12 counted twice
    cplx D = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
            double c = i == j ? alpha[i] * alpha[i] : 2.0 * alpha[0] * alpha[1];
            D += nu[i] * nu[j] * I * pi * c * target;
        }
    D /= two_pi_i;
    cplx lhs = z2_heisenberg(p, K).value * (D + s.projective_connection(x) / 12.0 * target);
    return relative(lhs, virasoro_onepoint_module(alpha, x, p, K).coefficient);
}

double ward_identity_check(const EvenLattice &L, const SheetPoint &x, const SewingPoint &p, int K, double R) {
    Sewing s(p, K);
    auto Om = s.period().matrix();
    cplx nu[2] = {s.nu(1, x), s.nu(2, x)};
    cplx D = 0.0;
    for (int i = 1; i <= 2; ++i)
        for (int j = i; j <= 2; ++j) D += nu[i - 1] * nu[j - 1] * siegel_theta2_derivative(i, j, L, Om, R).value;
    D /= two_pi_i;
    cplx theta = siegel_theta2(L, Om, R).value;
    int l = L.rank();
    cplx Z = l == 0 ? cplx(1.0) : z2_heisenberg(p, K, l).value;
    cplx lhs = Z * (D + double(l) / 12.0 * s.projective_connection(x) * theta);
    return relative(lhs, virasoro_onepoint_lattice(L, x, p, K, R).coefficient);
}

double form_transport_check(const SheetPoint &x, cplx y, const SewingPoint &p, int K) {
    double ay = std::abs(y), ae = std::abs(p.eps);
    if (ae == 0.0 || !(ay > 2.0 * ae / p.D2 && ay < p.D1 / 2.0))
        throw OutOfDiskError("form_transport_check: y is outside the identification annulus");
    Sewing s(p, K);
    cplx lhs = sym_n_omega({x, {1, y}}, s).coefficient;
    cplx rhs = sym_n_omega({x, {2, p.eps / y}}, s).coefficient * (-p.eps / (y * y));
    return relative(lhs, rhs);
}

} // namespace g2sew
