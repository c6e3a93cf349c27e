#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "g2sew/sewing.hpp"
#include "oracles.hpp"

using namespace g2sew;

namespace {

const cplx I(0.0, 1.0);

struct Pair {
    cplx t1, t2;
};
const Pair standard[] = {{2.0 * I, 2.0 * I}, {cplx(0.3, 1.5), cplx(-0.2, 1.8)}};

} // namespace

TEST_SUITE("sewing") {

TEST_CASE("domain gate")
{
    const double bound = 0.25 * 2 * pi * 2 * pi;
    CHECK_NOTHROW(make_point(I, I, 0.99 * bound));
    CHECK_THROWS_AS(make_point(I, I, 1.0 * bound), DomainError);
    CHECK_THROWS_AS(make_point(I, I, cplx(0.0, 1.01 * bound)), DomainError);
    CHECK_THROWS_AS(make_point(I, cplx(0.2, -1.0), 0.1), DomainError);

    SewingPoint p = make_point(cplx(0.3, 1.5), cplx(-0.2, 1.8), cplx(0.5, 0.7));
    CHECK(std::abs(p.sqrt_eps * p.sqrt_eps - p.eps) < 1e-14);
    CHECK(p.D1 == doctest::Approx(oracle::brute_lattice_distance(cplx(0.3, 1.5), 8)));
    CHECK(p.margin == doctest::Approx(std::abs(p.eps) / p.bound));

    SewingPoint h = point_at_margin(2.0 * I, 2.0 * I, 0.5, 1.0);
    CHECK(h.margin == doctest::Approx(0.5));
}

TEST_CASE("A-matrix entries")
{
    const cplx tau(0.3, 1.5);
    SewingPoint p = make_point(tau, cplx(-0.2, 1.8), cplx(0.8, -0.3));
    auto a = a_matrix(1, p, 12);
    CHECK(a.K == 12);
    CHECK(a.entries.rows() == 12);
    CHECK(std::abs(a.entries(0, 0) - p.eps * oracle::divisor_eisenstein(2, tau)) < 1e-13);
    CHECK(std::abs(a.entries(0, 1)) == 0.0);
    // (1,3): eps^2/sqrt(3) * C(1,3) = eps^2/sqrt(3) * 3 E_4
    CHECK(std::abs(a.entries(0, 2) - p.eps * p.eps / std::sqrt(3.0) * 3.0 * oracle::divisor_eisenstein(4, tau)) < 1e-13);
    for (int k = 0; k < 12; ++k)
        for (int l = 0; l < 12; ++l) {
            if ((k + l) % 2 == 1) CHECK(a.entries(k, l) == cplx{});
            else CHECK(std::abs(a.entries(k, l) - a.entries(l, k)) <= 1e-14 * std::abs(a.entries(k, l)));
        }
    CHECK(a_matrix(2, make_point(I, I, 0.0), 6).entries.norm() == 0.0);
    CHECK_THROWS_AS(a_matrix(1, p, 1), DomainError);
}

TEST_CASE("determinant")
{
    CHECK(std::abs(det_I_minus_A1A2(make_point(I, I, 0.0)) - 1.0) == 0.0);

    const cplx t1(0.3, 1.5), t2(-0.2, 1.8), eps(1e-3, 2e-3);
    SewingPoint p = make_point(t1, t2, eps);
    const cplx e2a = oracle::divisor_eisenstein(2, t1), e2b = oracle::divisor_eisenstein(2, t2);
    CHECK(std::abs(det_I_minus_A1A2(p) - (1.0 - eps * eps * e2a * e2b)) < 50.0 * std::pow(std::abs(eps), 4));

    SewingPoint q = make_point(I, I, 0.2);
    CHECK(std::abs(det_I_minus_A1A2(q, 12) - det_I_minus_A1A2(q, 16)) < 1e-10);

    for (const auto &tp : standard) {
        SewingPoint r = point_at_margin(tp.t1, tp.t2, 0.5, 0.4);
        LogDet ld = log_det_I_minus_A1A2(r, 16);
        CHECK(std::abs(ld.det - ld.det_lu) < 1e-12);
        CHECK(ld.terms <= 64);
    }
}

TEST_CASE("resolvent")
{
    CHECK((resolvent(make_point(I, I, 0.0), 8) - CMatrix::Identity(8, 8)).norm() == 0.0);

    const cplx t1(0.3, 1.5), t2(-0.2, 1.8), eps(2e-3, -1e-3);
    SewingPoint p = make_point(t1, t2, eps);
    const cplx e2a = oracle::divisor_eisenstein(2, t1), e2b = oracle::divisor_eisenstein(2, t2);
    CHECK(std::abs(resolvent(p)(0, 0) - (1.0 + eps * eps * e2a * e2b)) < 50.0 * std::pow(std::abs(eps), 4));

    for (const auto &tp : standard) {
        SewingPoint r = point_at_margin(tp.t1, tp.t2, 0.5, -0.7);
        CMatrix R = resolvent(r, 16);
        CMatrix m = a_matrix(1, r, 16).entries * a_matrix(2, r, 16).entries;
        CHECK(((CMatrix::Identity(16, 16) - m) * R - CMatrix::Identity(16, 16)).norm() < 1e-12);
    }
}

TEST_CASE("period matrix")
{
    PeriodMatrix z = period_matrix(make_point(cplx(0.1, 1.2), 2.0 * I, 0.0));
    CHECK(std::abs(z.omega11 - cplx(0.1, 1.2)) < 1e-15);
    CHECK(std::abs(z.omega22 - 2.0 * I) < 1e-15);
    CHECK(z.omega12 == cplx{});

    const cplx eps(3e-3, 1e-3);
    PeriodMatrix s = period_matrix(make_point(cplx(0.3, 1.5), cplx(-0.2, 1.8), eps));
    CHECK(std::abs(s.omega12 + eps / two_pi_i) < 10.0 * std::pow(std::abs(eps), 3));

    PeriodMatrix w = period_matrix(make_point(2.0 * I, 2.0 * I, 0.3));
    Eigen::Matrix2d im = w.matrix().imag();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(im);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    for (const auto &tp : standard)
        for (double phase : {0.0, 1.3, -2.1}) {
            SewingPoint r = point_at_margin(tp.t1, tp.t2, 0.5, phase);
            PeriodMatrix a = period_matrix(r, 12), b = period_matrix(r, 20);
            CHECK(std::abs(a.omega11 - b.omega11) < 1e-9);
            CHECK(std::abs(a.omega12 - b.omega12) < 1e-9);
            CHECK(std::abs(a.omega22 - b.omega22) < 1e-9);
            CHECK(b.est_error < 1e-9);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ev(b.matrix().imag());
            CHECK(ev.eigenvalues().minCoeff() > 0.0);
        }
}

TEST_CASE("forms at eps = 0")
{
    const cplx tau(0.3, 1.5);
    Sewing s(make_point(tau, cplx(-0.2, 1.8), 0.0), 10);
    const SheetPoint x{1, cplx(0.7, 0.4)}, y{1, cplx(-0.5, 1.1)}, u{2, cplx(0.3, -0.9)};
    CHECK(s.nu(1, x) == cplx(1.0));
    CHECK(s.nu(2, x) == cplx{});
    CHECK(s.nu(2, u) == cplx(1.0));
    CHECK(std::abs(s.omega2(x, y) - elliptic_P(2, s.point().tau1, x.z - y.z)) < 1e-9);
    CHECK(s.omega2(x, u) == cplx{});
    CHECK(std::abs(s.projective_connection(x) - 6.0 * oracle::divisor_eisenstein(2, tau)) < 1e-12);
}

TEST_CASE("omega2 symmetry")
{
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (const auto &tp : standard) {
        Sewing s(point_at_margin(tp.t1, tp.t2, 0.4, 0.9));
        for (int trial = 0; trial < 20; ++trial) {
            SheetPoint x{1 + trial % 2, cplx(U(rng) + 2.8, U(rng))};
            SheetPoint y{1 + (trial / 2) % 2, cplx(U(rng) - 2.8, U(rng))};
            const cplx a = s.omega2(x, y), b = s.omega2(y, x);
            CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("cycle integrals of nu")
{
    for (const auto &tp : standard) {
        Sewing s(point_at_margin(tp.t1, tp.t2, 0.5, 0.6));
        const PeriodMatrix om = s.period();
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                const cplx a = a_cycle_integral(i, j, s);
                CHECK(std::abs(a - (i == j ? two_pi_i : cplx{})) < 1e-6);
                const cplx b = b_cycle_integral(i, j, s) / two_pi_i;
                CHECK(std::abs(b - om(i, j)) < 1e-6);
            }
    }
}

TEST_CASE("sewing overlap")
{
    for (const auto &tp : standard)
        for (double m : {0.25, 0.5}) {
            Sewing s(point_at_margin(tp.t1, tp.t2, m, 0.3), 24);
            // x near the deep hole pi i (1 + tau) keeps the expansion about the annulus convergent
            const cplx h1 = pi * I * (1.0 + tp.t1) + cplx(0.2, -0.1), h2 = pi * I * (1.0 + tp.t2) + cplx(-0.1, 0.3);
            for (double phase : {0.0, 1.1, 2.5, -1.9}) {
                CHECK(overlap_residual(s, {1, h1}, phase) < 1e-6);
                CHECK(overlap_residual(s, {2, h2}, phase) < 1e-6);
            }
        }
    CHECK_THROWS_AS(overlap_residual(Sewing(make_point(I, I, 0.0)), {1, 1.0}, 0.0), DomainError);
}

TEST_CASE("projective connection")
{
    for (const auto &tp : standard) {
        Sewing s(point_at_margin(tp.t1, tp.t2, 0.3, 0.2));
        for (int sheet = 1; sheet <= 2; ++sheet) {
            const cplx x0(2.4, 0.8);
            const double d = 1e-3;
            const cplx lim = 6.0
                * (s.omega2({sheet, x0 + 0.5 * d}, {sheet, x0 - 0.5 * d}) - 1.0 / (d * d));
            CHECK(std::abs(s.projective_connection({sheet, x0}) - lim) < 1e-5);

            // no jumps: second differences along a densely sampled circle stay tiny
            std::vector<cplx> v;
            for (int j = 0; j <= 4000; ++j)
                v.push_back(s.projective_connection({sheet, x0 + std::polar(0.01, 2 * pi * j / 4000)}));
            double worst = 0.0;
            for (std::size_t j = 2; j < v.size(); ++j) worst = std::max(worst, std::abs(v[j] - 2.0 * v[j - 1] + v[j - 2]));
            CHECK(worst < 1e-8);
        }
    }
}

TEST_CASE("excised disk and poles")
{
    Sewing s(point_at_margin(I, I, 0.5));
    CHECK_THROWS_AS(s.nu(1, {1, cplx(0.1, 0.0)}), OutOfDiskError);
    CHECK_THROWS_AS(s.omega2({1, 2.0}, {1, 2.0}), PoleError);
    CHECK_THROWS_AS(s.nu(1, {3, 2.0}), DomainError);
}

}
