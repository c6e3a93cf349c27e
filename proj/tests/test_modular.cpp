#include <doctest.h>

#include <cmath>
#include <vector>

#include "g2sew/errors.hpp"
#include "g2sew/modular.hpp"

using namespace g2sew;

namespace {

const cplx I(0.0, 1.0);
const SL2 Id = SL2::Identity();

std::vector<SL2> words() {
    SL2 Tinv;
    Tinv << 1, -1, 0, 1;
    std::vector<SL2> gens = {sl2_T(), sl2_S(), Tinv}, out = {Id};
    std::vector<SL2> frontier = {Id};
    for (int len = 0; len < 3; ++len) {
        std::vector<SL2> next;
        for (const auto &w : frontier)
            for (const auto &g : gens) next.push_back(w * g);
        out.insert(out.end(), next.begin(), next.end());
        frontier = next;
    }
    return out;
}

std::vector<GElement> sample_elements() {
    SL2 T = sl2_T(), S = sl2_S();
    return {GElement(), GElement(T, Id), GElement(Id, S), GElement(S, T, 1), GElement(T * S, S * T * T, 0),
            GElement::beta()};
}

} // namespace

TEST_SUITE("modular") {

TEST_CASE("group elements")
{
    SL2 bad;
    bad << 2, 0, 0, 1;
    CHECK_THROWS_AS(GElement(bad, Id), DomainError);
    CHECK_THROWS_AS(GElement(Id, Id, 2), DomainError);
    GElement b = GElement::beta();
    auto bb = compose(b, b);
    CHECK(bb.beta_power == 0);
    CHECK(bb.gamma1 == Id);
    GElement g(sl2_T(), sl2_S());
    auto c = compose(compose(b, g), b);
    CHECK(c.gamma1 == sl2_S());
    CHECK(c.gamma2 == sl2_T());
    CHECK(c.beta_power == 0);
}

TEST_CASE("action on the sewing domain")
{
    SewingPoint p = point_at_margin(2.0 * I, cplx(0.3, 1.5), 0.3, 0.4);
    auto t = act_on_domain(GElement(sl2_T(), Id), p);
    CHECK(std::abs(t.tau1.tau() - (p.tau1.tau() + 1.0)) < 1e-15);
    CHECK(t.tau2.tau() == p.tau2.tau());
    CHECK(t.eps == p.eps);
    auto b = act_on_domain(GElement::beta(), p);
    CHECK(b.tau1.tau() == p.tau2.tau());
    CHECK(b.tau2.tau() == p.tau1.tau());
    auto s = act_on_domain(GElement(sl2_S(), Id), p);
    CHECK(std::abs(s.tau1.tau() + 1.0 / p.tau1.tau()) < 1e-15);
    CHECK(std::abs(s.eps - p.eps / p.tau1.tau()) < 1e-15);

    // composition is an action
    auto els = sample_elements();
    SewingPoint q = point_at_margin(2.0 * I, 2.0 * I, 0.1, 0.2);
    for (const auto &g : els)
        for (const auto &h : els) {
            auto lhs = act_on_domain(compose(g, h), q);
            auto rhs = act_on_domain(g, act_on_domain(h, q));
            CHECK(std::abs(lhs.tau1.tau() - rhs.tau1.tau()) < 1e-13);
            CHECK(std::abs(lhs.eps - rhs.eps) < 1e-13);
        }
    // D(g tau) = D(tau)/|c tau + d| and eps scales alike, so the margin is invariant
    SewingPoint edge = point_at_margin(4.0 * I, cplx(0.4, 0.9), 0.95, 1.0);
    for (const auto &g : els) CHECK(act_on_domain(g, edge).margin == doctest::Approx(edge.margin).epsilon(1e-12));
}

TEST_CASE("symplectic embedding")
{
    Eigen::Matrix2cd Om;
    Om << cplx(0.1, 1.3), cplx(0.05, 0.2), cplx(0.05, 0.2), cplx(-0.2, 0.9);
    CHECK((act_on_H2(embed_sp4(GElement()), Om) - Om).norm() < 1e-15);
    Eigen::Matrix2cd D;
    D << cplx(0.1, 1.3), 0.0, 0.0, cplx(-0.2, 0.9);
    Eigen::Matrix2cd Db = act_on_H2(embed_sp4(GElement::beta()), D);
    CHECK(Db(0, 0) == D(1, 1));
    CHECK(Db(1, 1) == D(0, 0));
    Eigen::Matrix2cd Ot = act_on_H2(embed_sp4(GElement(sl2_T(), Id)), Om);
    Eigen::Matrix2cd diff = Ot - Om;
    CHECK(std::abs(diff(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(diff(0, 1)) + std::abs(diff(1, 1)) < 1e-15);

    auto els = sample_elements();
    for (const auto &g : els) {
        CHECK(is_symplectic(embed_sp4(g)));
        for (const auto &h : els) CHECK(embed_sp4(compose(g, h)) == embed_sp4(g) * embed_sp4(h));
    }
    Sp4 sing = Sp4::Zero();
    sing.topRightCorner<2, 2>() = Eigen::Matrix2i::Identity();
    Eigen::Matrix2cd Z = Eigen::Matrix2cd::Zero();
    CHECK_THROWS_AS(act_on_H2(sing, Z), SingularMatrixError);
}

TEST_CASE("characters")
{
    CHECK(std::abs(chi(sl2_T()) - std::exp(-I * pi / 6.0)) < 1e-15);
    CHECK(std::abs(chi(sl2_S()) - I) < 1e-15);
    CHECK(chi(Id) == cplx(1.0));
    auto ws = words();
    for (const auto &g : ws)
        for (const auto &h : ws) {
            if ((g * h).cwiseAbs().maxCoeff() > 4) continue;
            CHECK(std::abs(chi(g * h) - chi(g) * chi(h)) < 1e-12);
        }
    CHECK(chi2(GElement::beta()) == cplx(-1.0));
    CHECK(std::abs(chi2(GElement(sl2_T(), Id)) - std::exp(-I * pi / 6.0)) < 1e-15);
    CHECK(std::abs(chi2(GElement(sl2_S(), sl2_S(), 1)) - 1.0) < 1e-15);
    CHECK_THROWS_AS(snap_to_twelfth_root(cplx(0.9, 0.1)), InconsistencyError);
}

TEST_CASE("period map equivariance")
{
    SewingPoint p = make_point(2.0 * I, 2.0 * I, 0.3);
    CHECK(check_equivariance(GElement(), p) == 0.0);
    CHECK(check_equivariance(GElement(sl2_T(), Id), p) < 1e-8);
    SewingPoint q = point_at_margin(cplx(0.3, 1.5), cplx(-0.2, 1.8), 0.3, 0.7);
    CHECK(check_equivariance(GElement::beta(), q) < 1e-12);
    for (const auto &g : {GElement(sl2_T(), Id), GElement(Id, sl2_T()), GElement(sl2_S(), Id), GElement(Id, sl2_S())})
        CHECK(check_equivariance(g, q) < 1e-7);
    // the truncated matrices transform covariantly, so both sit at rounding level
    GElement S1(sl2_S(), Id);
    SewingPoint far = point_at_margin(cplx(0.3, 1.5), cplx(-0.2, 1.8), 0.8, 0.7);
    double r12 = check_equivariance(S1, far, 12), r20 = check_equivariance(S1, far, 20);
    CHECK(r12 < 1e-13);
    CHECK(r20 < 1e-13);
}

TEST_CASE("automorphy")
{
    SewingPoint q = point_at_margin(cplx(0.3, 1.5), cplx(-0.2, 1.8), 0.3, 0.7);
    for (const auto &g : sample_elements()) {
        auto r = check_automorphy(g, q);
        CHECK(r.character == chi2(g));
        CHECK(r.residual < 1e-7);
    }
    CHECK(check_automorphy(GElement::beta(), q).character == cplx(-1.0));
    CHECK(std::abs(check_automorphy(GElement(sl2_T(), Id), q).character - std::exp(-I * pi / 6.0)) < 1e-15);
    CHECK(check_automorphy(GElement(sl2_S(), Id), q, default_K, 24).residual < 1e-6);
    CHECK_THROWS_AS(check_automorphy(GElement(), q, default_K, 3), DomainError);

    EvenLattice A1(Eigen::MatrixXi::Constant(1, 1, 2));
    CHECK(check_lattice_automorphy(GElement(sl2_S(), Id), A1, q) < 1e-7);
    CHECK(check_lattice_automorphy(GElement::beta(), A1, q) < 1e-12);
}

}
