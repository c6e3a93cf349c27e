#include <doctest.h>

#include <cstring>
#include <sstream>

#include "cli_io.hpp"
#include "g2sew/partition.hpp"

using namespace g2sew;
using namespace g2sew::cli;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("complex input")
{
    CHECK(parse_complex("0.3+1.5i") == cplx(0.3, 1.5));
    CHECK(parse_complex("-0.2-1.8i") == cplx(-0.2, -1.8));
    CHECK(parse_complex("2i") == cplx(0.0, 2.0));
    CHECK(parse_complex("-i") == cplx(0.0, -1.0));
    CHECK(parse_complex("1+i") == cplx(1.0, 1.0));
    CHECK(parse_complex("0.25") == cplx(0.25, 0.0));
    CHECK(parse_complex("1e-3-2.5e-2i") == cplx(1e-3, -2.5e-2));
    CHECK(parse_complex("-1E+2") == cplx(-100.0, 0.0));
    CHECK(parse_complex(" 1 + 2i ") == cplx(1.0, 2.0));
    CHECK_THROWS_AS(parse_complex(""), DomainError);
    CHECK_THROWS_AS(parse_complex("1+x"), DomainError);
    CHECK_THROWS_AS(parse_complex("1+2ii"), DomainError);
}

TEST_CASE("gram and list input")
{
    auto g = parse_gram("2,-1;-1,2");
    CHECK(g.rows() == 2);
    CHECK(g(0, 1) == -1);
    CHECK(parse_gram("2")(0, 0) == 2);
    CHECK_THROWS_AS(parse_gram("2,1"), DomainError);
    CHECK_THROWS_AS(parse_gram("2.5"), DomainError);
    CHECK(parse_list("0.5,-0.25") == std::vector<double>{0.5, -0.25});
}

TEST_CASE("json round trip is bit exact")
{
    SewingPoint p = point_at_margin(cplx(0.3, 1.5), cplx(-0.2, 1.8), 0.37, 1.3);
    auto om = period_matrix(p).matrix();
    json j = json::parse(to_json(om).dump());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            cplx z = complex_from_json(j[a][b]);
            CHECK(same_bits(z.real(), om(a, b).real()));
            CHECK(same_bits(z.imag(), om(a, b).imag()));
        }
    auto r = z2_module_pair(0.7, -1.1, p);
    json k = json::parse(to_json(r).dump());
    CHECK(same_bits(complex_from_json(k["value"]).real(), r.value.real()));
    CHECK(same_bits(complex_from_json(k["breakdown"]["det_factor"]).imag(), r.breakdown.det_factor.imag()));
    CHECK(same_bits(k["est_error"].get<double>(), r.est_error));
    CHECK(k["truncation"]["K"] == default_K);
}

TEST_CASE("check csv")
{
    std::vector<CheckResult> rs = {{"c01.a", 1, "oracles", "x, y", 1e-12, 1e-8, true, ""},
                                   {"c02.b", 2, "graphs", "plain", 0.1, 1e-8, false, ""}};
    std::ostringstream os;
    write_checks_csv(os, rs);
    CHECK(os.str() == "check_id,anchor,residual,tolerance,pass\n"
                      "c01.a,\"x, y\",9.9999999999999998e-13,1e-08,true\n"
                      "c02.b,plain,0.10000000000000001,1e-08,false\n");
}

}
