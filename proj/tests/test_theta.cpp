#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "g2sew/errors.hpp"
#include "g2sew/theta.hpp"

using namespace g2sew;

namespace {

const cplx I(0.0, 1.0);

Eigen::Matrix2cd diag(cplx a, cplx b, cplx c = 0.0) {
    Eigen::Matrix2cd m;
    m << a, c, c, b;
    return m;
}

Eigen::MatrixXi gram_of(std::initializer_list<std::initializer_list<int>> rows) {
    Eigen::MatrixXi g(rows.size(), rows.size());
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (int x : r) g(i, j++) = x;
        ++i;
    }
    return g;
}

// genus one theta of A1 by plain summation
cplx theta_A1(cplx tau) {
    cplx s = 0.0;
    for (int m = -30; m <= 30; ++m) s += std::exp(2.0 * pi * I * double(m * m) * tau);
    return s;
}

} // namespace

TEST_SUITE("theta") {

TEST_CASE("lattice validation")
{
    CHECK_NOTHROW(EvenLattice(gram_of({{2, -1}, {-1, 2}})));
    CHECK_THROWS_AS(EvenLattice(gram_of({{1}})), DomainError);
    CHECK_THROWS_AS(EvenLattice(gram_of({{2, 3}, {3, 2}})), DomainError);
    CHECK_THROWS_AS(EvenLattice(gram_of({{2, 1}, {0, 2}})), DomainError);
    CHECK(EvenLattice(Eigen::MatrixXi(0, 0)).rank() == 0);
}

TEST_CASE("lattice vectors")
{
    auto v = lattice_vectors(gram_of({{2}}), 2.0);
    std::set<int> got;
    for (auto &x : v) got.insert(x(0));
    CHECK(got == std::set<int>{-1, 0, 1});
    CHECK(v.size() == 3);
    CHECK(lattice_vectors(gram_of({{2, -1}, {-1, 2}}), 0.0).size() == 1);

    const Eigen::MatrixXi grams[] = {gram_of({{2, -1}, {-1, 2}}), gram_of({{4, 1}, {1, 2}}),
                                     gram_of({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}})};
    for (const auto &g : grams) {
        for (double R : {0.0, 2.0, 7.5, 12.0}) {
            auto vs = lattice_vectors(g, R);
            CHECK(vs.size() % 2 == 1);
            std::set<std::vector<int>> seen;
            for (auto &x : vs) seen.insert(std::vector<int>(x.data(), x.data() + x.size()));
            CHECK(seen.size() == vs.size());
            // box scan oracle
            int n = static_cast<int>(g.rows()), B = 6;
            long count = 0;
            Eigen::VectorXi x = Eigen::VectorXi::Constant(n, -B);
            while (true) {
                if (x.dot(g * x) <= R) ++count;
                int k = 0;
                while (k < n && x(k) == B) x(k++) = -B;
                if (k == n) break;
                ++x(k);
            }
            CHECK(count == static_cast<long>(vs.size()));
        }
    }
}

TEST_CASE("siegel theta")
{
    Eigen::Matrix2cd Om = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9), cplx(0.05, 0.2));
    CHECK(std::abs(siegel_theta2(EvenLattice(Eigen::MatrixXi(0, 0)), Om).value - 1.0) == 0.0);

    EvenLattice A1(gram_of({{2}}));
    Eigen::Matrix2cd D = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9));
    CHECK(std::abs(siegel_theta2(A1, D).value - theta_A1(D(0, 0)) * theta_A1(D(1, 1))) < 1e-13);

    Eigen::Matrix2cd Ii = diag(I, I);
    EvenLattice A2(gram_of({{2, -1}, {-1, 2}}));
    auto t1 = siegel_theta2(A2, Ii, 8.0, 1e-6), t2 = siegel_theta2(A2, Ii, 16.0, 1e-6);
    CHECK(std::abs(t1.value - t2.value) < 1e-10);

    // A1 is the Riemann theta at 2 Omega
    auto rt = riemann_theta2({}, 2.0 * Om);
    CHECK(std::abs(siegel_theta2(A1, Om).value - rt.value) < 1e-13);

    CHECK_THROWS_AS(siegel_theta2(A2, diag(0.2 * I, 0.2 * I), 2.0), CutoffError);
    // a cutoff that keeps only the origin certifies nothing
    CHECK_THROWS_AS(siegel_theta2(A2, diag(2.0 * I, 2.0 * I), 0.5), CutoffError);
    CHECK_THROWS_AS(siegel_theta2(A2, diag(I, -I)), DomainError);
}

TEST_CASE("riemann and jacobi theta")
{
    Eigen::Matrix2cd Ii = diag(I, I);
    double s = 0.0;
    for (int m = -20; m <= 20; ++m) s += std::exp(-pi * m * m);
    CHECK(std::abs(riemann_theta2({}, Ii).value - s * s) < 1e-14);
    CHECK(std::abs(riemann_theta2({}, Ii).value - 1.180341) < 1e-6);

    const cplx tau(0.2, 0.8);
    Characteristics odd{{0.5, 0.5}, {0.5, 0.5}};
    CHECK(std::abs(riemann_theta2(odd, diag(tau, tau)).value) < 1e-12);

    Eigen::Matrix2cd Om = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9), cplx(0.05, 0.2));
    Characteristics a{{0.0, 0.0}, {0.3, -0.1}}, b{{0.0, 0.0}, {1.3, 1.9}};
    CHECK(std::abs(riemann_theta2(a, Om).value - riemann_theta2(b, Om).value) < 1e-12);

    TorusModulus mi(I);
    CHECK(std::abs(jacobi_theta(0.5, 0.5, TorusModulus(tau))) < 1e-14);
    CHECK(std::abs(jacobi_theta(0.0, 0.0, mi) - s) < 1e-14);
    CHECK(std::abs(jacobi_theta(0.0, 0.0, mi) - 1.086435) < 1e-6);

    // e^{-2 pi i l m} theta[l;m](tau) = sum_m e^{2 pi i m mu} q^{(m+l)^2/2}
    for (auto [l, mu] : {std::pair{0.25, 0.3}, std::pair{-0.4, 0.7}}) {
        TorusModulus m(tau);
        cplx lhs = std::exp(-2.0 * pi * I * l * mu) * jacobi_theta(l, mu, m);
        cplx rhs = 0.0;
        for (int k = -30; k <= 30; ++k)
            rhs += std::exp(2.0 * pi * I * double(k) * mu) * std::exp(0.5 * (k + l) * (k + l) * m.log_q());
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }

    // diagonal Omega factorizes
    Eigen::Matrix2cd D = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9));
    Characteristics c{{0.25, -0.5}, {0.1, 0.6}};
    cplx prod = jacobi_theta(0.25, 0.1, TorusModulus(D(0, 0))) * jacobi_theta(-0.5, 0.6, TorusModulus(D(1, 1)));
    CHECK(std::abs(riemann_theta2(c, D).value - prod) < 1e-13);
}

TEST_CASE("omega derivatives")
{
    Eigen::Matrix2cd Om = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9), cplx(0.05, 0.2));
    EvenLattice A2(gram_of({{2, -1}, {-1, 2}}));
    Characteristics c{{0.25, -0.5}, {0.1, 0.6}};
    const double h = 1e-5;
    for (auto [i, j] : {std::pair{1, 1}, std::pair{1, 2}, std::pair{2, 2}}) {
        Eigen::Matrix2cd dO = Eigen::Matrix2cd::Zero();
        dO(i - 1, j - 1) = dO(j - 1, i - 1) = h;
        cplx fd_s = (siegel_theta2(A2, Om + dO).value - siegel_theta2(A2, Om - dO).value) / (2 * h);
        CHECK(std::abs(siegel_theta2_derivative(i, j, A2, Om).value - fd_s) < 1e-6);
        cplx fd_r = (riemann_theta2(c, Om + dO).value - riemann_theta2(c, Om - dO).value) / (2 * h);
        CHECK(std::abs(riemann_theta2_derivative(i, j, c, Om).value - fd_r) < 1e-6);
    }
    CHECK(std::abs(riemann_theta2_derivative(1, 2, {}, diag(I, cplx(0.3, 1.1))).value) < 1e-14);
    CHECK(siegel_theta2_derivative(1, 1, EvenLattice(Eigen::MatrixXi(0, 0)), Om).value == cplx(0.0));
    CHECK_THROWS_AS(riemann_theta2_derivative(2, 1, c, Om), DomainError);
}

TEST_CASE("summation order")
{
    Eigen::Matrix2cd Om = diag(cplx(0.1, 1.2), cplx(-0.3, 0.9), cplx(0.05, 0.2));
    EvenLattice A2(gram_of({{2, -1}, {-1, 2}}));
    auto ref = siegel_theta2(A2, Om);
    auto V = lattice_vectors(A2.gram, ref.cutoff);
    std::vector<cplx> terms;
    for (auto &a : V)
        for (auto &b : V)
            terms.push_back(std::exp(I * pi *
                                     (double(A2.norm(a)) * Om(0, 0) + 2.0 * A2.inner(a, b) * Om(0, 1) +
                                      double(A2.norm(b)) * Om(1, 1))));
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(terms.begin(), terms.end(), rng);
        cplx s = 0.0;
        for (auto t : terms) s += t;
        CHECK(std::abs(s - ref.value) < 1e-12);
    }
}

}
