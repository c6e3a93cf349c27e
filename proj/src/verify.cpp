#include "g2sew/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>

#include "g2sew/errors.hpp"
#include "g2sew/fock.hpp"
#include "g2sew/graphs.hpp"
#include "g2sew/modular.hpp"
#include "g2sew/npoint.hpp"
#include "g2sew/taylor.hpp"

namespace g2sew {

namespace {

const cplx I(0.0, 1.0);

struct Pair {
    const char *name;
    cplx t1, t2;
};
const Pair pairs[] = {{"square", 2.0 * I, 2.0 * I}, {"skew", cplx(0.3, 1.5), cplx(-0.2, 1.8)}};
const double margins[] = {0.25, 0.5};

struct Outcome {
    double residual;
    double tolerance;
    std::string note;
};

struct Check {
    std::string id;
    int criterion;
    std::string suite;
    std::string anchor;
    std::function<Outcome()> run;
};

std::string margin_tag(double m) { return "m" + std::to_string(static_cast<int>(std::lround(100 * m))); }

NormFunction norm_for(const VerifyOptions &opt) {
    if (!opt.inject_liz_sign) return liz_norm;
    return [](const FockPartition &l) { return std::abs(liz_norm(l)); };
}

// relative coefficient comparison, residual reported as the worst relative error
Outcome coefficient_outcome(const std::vector<cplx> &a, const std::vector<cplx> &b, double r, int nmax, double tol) {
    auto c = compare_coefficients(a, b, r, nmax, tol);
    return {c.max_residual * tol, tol, "worst order " + std::to_string(c.worst_order)};
}

std::vector<cplx> series_of(cplx t1, cplx t2, double r, int M, const std::function<cplx(const SewingPoint &)> &f) {
    return taylor_coefficients([&](cplx e) { return f(make_point(t1, t2, e)); }, r, M);
}

double relative(cplx a, cplx b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::set<std::set<std::vector<int>>> naive_orbits(int D) {
    std::set<std::set<std::vector<int>>> orbits;
    std::vector<std::vector<int>> frontier{{}};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto &w : frontier) {
            int sum = 0;
            for (int k : w) sum += k;
            if (!w.empty() && w.size() % 2 == 0) {
                std::set<std::vector<int>> orbit;
                std::size_t n = w.size();
                for (std::size_t s = 0; s < n; s += 2) {
                    std::vector<int> r(n);
                    for (std::size_t j = 0; j < n; ++j) r[j] = w[(j + s) % n];
                    orbit.insert(r);
                }
                orbits.insert(orbit);
            }
            for (int k = 1; sum + k <= D; ++k) {
                auto v = w;
                v.push_back(k);
                next.push_back(v);
            }
        }
        frontier.swap(next);
    }
    return orbits;
}

void partitions_rec(int left, int maxp, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(left, maxp); k >= 1; --k) {
        cur.push_back(k);
        partitions_rec(left - k, k, cur, out);
        cur.pop_back();
    }
}

// ---- criterion builders

void determinant_oracle(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs)
        for (double m : margins) {
            out.push_back({"c01.det-oracle." + std::string(pr.name) + "." + margin_tag(m), 1, "oracles",
                           "determinant formula vs Fock sum", [=] {
                               double r = m * make_point(pr.t1, pr.t2, 0.0).bound;
                               auto z = series_of(pr.t1, pr.t2, r, opt.samples,
                                                  [&](const SewingPoint &q) { return z2_heisenberg(q, opt.K).value; });
                               auto f = genus2_Z_direct(make_point(pr.t1, pr.t2, 0.0), 8, norm_for(opt));
                               return coefficient_outcome(f.coeffs, z, r, 8, 1e-8);
                           }});
        }
}

void product_formulas(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs)
        for (double m : margins) {
            std::string tag = std::string(pr.name) + "." + margin_tag(m);
            out.push_back({"c02.product-det." + tag, 2, "graphs", "determinant as product over rotationless cycles", [=] {
                               SewingPoint p = point_at_margin(pr.t1, pr.t2, m, 0.7);
                               double tol = 10.0 * std::pow(std::abs(p.eps), opt.D + 1);
                               return Outcome{std::abs(product_det(p, opt.D) - det_I_minus_A1A2(p, opt.K)), tol, ""};
                           }});
            out.push_back({"c02.product-resolvent." + tag, 2, "graphs", "resolvent entry as product over L21 cycles",
                           [=] {
                               SewingPoint p = point_at_margin(pr.t1, pr.t2, m, 0.7);
                               double tol = 10.0 * std::pow(std::abs(p.eps), opt.D + 1);
                               cplx d = product_zeta12_resolvent(p, opt.D) - resolvent(p, opt.K)(0, 0);
                               return Outcome{std::abs(d), tol, ""};
                           }});
        }
    // the same identities order by order in eps
    for (const auto &pr : pairs)
        out.push_back({"c02.product-coefficients." + std::string(pr.name), 2, "graphs",
                       "product formulas through order D", [=] {
                           // the order-D coefficient is tiny at smaller radii and drowns in DFT roundoff
                           double r = 0.5 * make_point(pr.t1, pr.t2, 0.0).bound;
                           int M = std::max(opt.samples, 2 * opt.D + 4);
                           auto g = series_of(pr.t1, pr.t2, r, M, [&](const SewingPoint &q) { return product_det(q, opt.D); });
                           auto d = series_of(pr.t1, pr.t2, r, M,
                                              [&](const SewingPoint &q) { return det_I_minus_A1A2(q, opt.D + 2); });
                           auto gr = series_of(pr.t1, pr.t2, r, M,
                                               [&](const SewingPoint &q) { return product_zeta12_resolvent(q, opt.D); });
                           auto dr = series_of(pr.t1, pr.t2, r, M,
                                               [&](const SewingPoint &q) { return resolvent(q, opt.D + 2)(0, 0); });
                           auto a = coefficient_outcome(g, d, r, opt.D, 1e-9);
                           auto b = coefficient_outcome(gr, dr, r, opt.D, 1e-9);
                           return a.residual >= b.residual ? a : b;
                       }});
}

void module_oracle(const VerifyOptions &opt, std::vector<Check> &out) {
    const std::pair<double, double> alphas[] = {{1, 0}, {1, 1}, {-1, 2}};
    for (const auto &pr : pairs)
        for (double m : margins)
            for (auto [a1, a2] : alphas) {
                std::ostringstream id;
                id << "c03.module-oracle." << pr.name << "." << margin_tag(m) << ".a(" << a1 << "," << a2 << ")";
                out.push_back({id.str(), 3, "oracles", "module pair partition function vs Fock sum", [=] {
                                   double r = m * make_point(pr.t1, pr.t2, 0.0).bound;
                                   auto z = series_of(pr.t1, pr.t2, r, opt.samples, [&](const SewingPoint &q) {
                                       return z2_module_pair(a1, a2, q, opt.K).value;
                                   });
                                   auto f = genus2_Z_module_direct(a1, a2, make_point(pr.t1, pr.t2, 0.0), 6,
                                                                   norm_for(opt));
                                   return coefficient_outcome(f.coeffs, z, r, 6, 1e-7);
                               }});
            }
}

void lattice_consistency(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs)
        out.push_back({"c04.lattice-A1." + std::string(pr.name), 4, "oracles",
                       "lattice partition function as a sum over module pairs", [=] {
                           EvenLattice A1(Eigen::MatrixXi::Constant(1, 1, 2));
                           double r = 0.25 * make_point(pr.t1, pr.t2, 0.0).bound;
                           int M = 32;
                           auto z = series_of(pr.t1, pr.t2, r, M,
                                              [&](const SewingPoint &q) { return z2_lattice(A1, q, opt.K).value; });
                           // |alpha| = sqrt(2)|m| <= 6
                           auto d = series_of(pr.t1, pr.t2, r, M, [&](const SewingPoint &q) {
                               cplx s = 0.0;
                               for (int m1 = -4; m1 <= 4; ++m1)
                                   for (int m2 = -4; m2 <= 4; ++m2)
                                       s += z2_module_pair(std::sqrt(2.0) * m1, std::sqrt(2.0) * m2, q, opt.K).value;
                               return s;
                           });
                           return coefficient_outcome(z, d, r, 4, 1e-6);
                       }});
}

std::vector<std::pair<std::string, GElement>> generators() {
    SL2 T = sl2_T(), S = sl2_S(), Id = SL2::Identity();
    return {{"T1", GElement(T, Id)},
            {"T2", GElement(Id, T)},
            {"S1", GElement(S, Id)},
            {"S2", GElement(Id, S)},
            {"beta", GElement::beta()}};
}

void equivariance(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs)
        for (const auto &[name, g] : generators())
            out.push_back({"c05.equivariance." + std::string(pr.name) + "." + name, 5, "modular",
                           "period map equivariance", [=] {
                               SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.7);
                               return Outcome{check_equivariance(g, p, opt.K), 1e-7, ""};
                           }});
}

void automorphy(const VerifyOptions &opt, std::vector<Check> &out) {
    auto gens = generators();
    SL2 T = sl2_T(), S = sl2_S();
    gens.push_back({"S1S2beta", GElement(S, S, 1)});
    gens.push_back({"TS.STT", GElement(T * S, S * T * T)});
    for (const auto &pr : pairs)
        for (const auto &[name, g] : gens) {
            out.push_back({"c06.character." + std::string(pr.name) + "." + name, 6, "modular",
                           "rank two automorphy character", [=] {
                               SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.7);
                               auto r = check_automorphy(g, p, opt.K, 2);
                               cplx expected = chi2(g);
                               std::ostringstream note;
                               note << "character (" << r.character.real() << "," << r.character.imag() << ")";
                               double res = r.character == expected ? r.residual : 1.0;
                               return Outcome{res, 1e-6, note.str()};
                           }});
            out.push_back({"c06.rank24." + std::string(pr.name) + "." + name, 6, "modular",
                           "rank 24 automorphy of weight -12", [=] {
                               SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.7);
                               return Outcome{check_automorphy(g, p, opt.K, 24).residual, 1e-6, ""};
                           }});
        }
}

void geometry(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs) {
        std::string tag(pr.name);
        out.push_back({"c07.a-cycles." + tag, 7, "geometry", "a-period normalization of nu", [=] {
                           Sewing s(point_at_margin(pr.t1, pr.t2, 0.5, 0.6), opt.K);
                           double worst = 0.0;
                           for (int i = 1; i <= 2; ++i)
                               for (int j = 1; j <= 2; ++j)
                                   worst = std::max(worst, std::abs(a_cycle_integral(i, j, s) -
                                                                    (i == j ? two_pi_i : cplx(0.0))));
                           return Outcome{worst, 1e-6, ""};
                       }});
        out.push_back({"c07.b-cycles." + tag, 7, "geometry", "b-periods of nu give the period matrix", [=] {
                           Sewing s(point_at_margin(pr.t1, pr.t2, 0.5, 0.6), opt.K);
                           auto om = s.period();
                           double worst = 0.0;
                           for (int i = 1; i <= 2; ++i)
                               for (int j = 1; j <= 2; ++j)
                                   worst = std::max(worst, std::abs(b_cycle_integral(i, j, s) / two_pi_i - om(i, j)));
                           return Outcome{worst, 1e-6, ""};
                       }});
        out.push_back({"c07.omega-symmetry." + tag, 7, "geometry", "symmetry of the bidifferential", [=] {
                           Sewing s(point_at_margin(pr.t1, pr.t2, 0.4, 0.9), opt.K);
                           std::mt19937 rng(opt.seed);
                           std::uniform_real_distribution<double> u(-1.0, 1.0);
                           double worst = 0.0;
                           for (int k = 0; k < 20; ++k) {
                               SheetPoint x{1 + k % 2, cplx(u(rng) + 2.8, u(rng))};
                               SheetPoint y{1 + (k / 2) % 2, cplx(u(rng) - 2.8, u(rng))};
                               cplx a = s.omega2(x, y), b = s.omega2(y, x);
                               worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
                           }
                           return Outcome{worst, 1e-9, ""};
                       }});
        for (double m : margins)
            out.push_back({"c07.overlap." + tag + "." + margin_tag(m), 7, "geometry",
                           "sewing relation on the identification annulus", [=] {
                               Sewing s(point_at_margin(pr.t1, pr.t2, m, 0.3), std::max(opt.K, 24));
                               cplx h1 = pi * I * (1.0 + pr.t1) + cplx(0.2, -0.1);
                               cplx h2 = pi * I * (1.0 + pr.t2) + cplx(-0.1, 0.3);
                               double worst = 0.0;
                               for (double phase : {0.0, 1.1, 2.5, -1.9})
                                   worst = std::max({worst, overlap_residual(s, {1, h1}, phase),
                                                     overlap_residual(s, {2, h2}, phase)});
                               return Outcome{worst, 1e-6, "K = " + std::to_string(std::max(opt.K, 24))};
                           }});
    }
}

void npoint_checks(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs) {
        std::string tag(pr.name);
        out.push_back({"c08.two-point." + tag, 8, "npoint", "two-point function vs Fock sum", [=] {
                           double r = 0.25 * make_point(pr.t1, pr.t2, 0.0).bound;
                           const cplx x1(1.5, 0.8), x2(-1.2, 1.1);
                           auto c = series_of(pr.t1, pr.t2, r, opt.samples, [&](const SewingPoint &q) {
                               return heisenberg_npoint({{1, x1}, {1, x2}}, q, opt.K).coefficient;
                           });
                           auto f = genus2_twopoint_direct(x1, x2, make_point(pr.t1, pr.t2, 0.0), 6, norm_for(opt));
                           return coefficient_outcome(f.coeffs, c, r, 6, 1e-7);
                       }});
        out.push_back({"c08.virasoro-limit." + tag, 8, "npoint", "Virasoro one-point function as a subtracted limit",
                       [=] {
                           SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.9);
                           const double d = 1e-3;
                           cplx Z = z2_heisenberg(p, opt.K).value;
                           double worst = 0.0;
                           for (SheetPoint y : {SheetPoint{1, cplx(2.2, 0.9)}, SheetPoint{2, cplx(-2.0, 1.6)}}) {
                               SheetPoint a{y.sheet, y.z + 0.5 * d}, b{y.sheet, y.z - 0.5 * d};
                               cplx lim = 0.5 * (heisenberg_npoint({a, b}, p, opt.K).coefficient - Z / (d * d));
                               worst = std::max(worst, std::abs(lim - virasoro_onepoint(y, p, opt.K).coefficient) /
                                                           std::abs(Z));
                           }
                           return Outcome{worst, 1e-5, ""};
                       }});
        out.push_back({"c08.ward-module." + tag, 8, "npoint", "Ward identity for a module pair", [=] {
                           SheetPoint x{1, cplx(2.2, 0.9)}, y{2, cplx(-2.0, 1.6)};
                           SewingPoint small = point_at_margin(pr.t1, pr.t2, 0.05, 0.2);
                           SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.9);
                           double w = std::max({ward_identity_check({1, 0}, x, small, opt.K),
                                                ward_identity_check({1, -2}, y, p, opt.K),
                                                ward_identity_check({0, 0}, x, p, opt.K)});
                           return Outcome{w, 1e-6, ""};
                       }});
        out.push_back({"c08.ward-lattice." + tag, 8, "npoint", "Ward identity for the A1 lattice", [=] {
                           EvenLattice A1(Eigen::MatrixXi::Constant(1, 1, 2));
                           SewingPoint p = point_at_margin(pr.t1, pr.t2, 0.3, 0.9);
                           double w = std::max(ward_identity_check(A1, {1, cplx(2.2, 0.9)}, p, opt.K),
                                               ward_identity_check(A1, {2, cplx(-2.0, 1.6)}, p, opt.K));
                           return Outcome{w, 1e-6, ""};
                       }});
    }
}

void combinatorics(const VerifyOptions &, std::vector<Check> &out) {
    out.push_back({"c09.F-classes", 9, "graphs", "F-equivalence class sizes", [] {
                       int failures = 0, literal_failures = 0, cases = 0;
                       for (int n = 1; n <= 6; ++n) {
                           std::vector<std::vector<int>> parts;
                           std::vector<int> cur;
                           partitions_rec(n, n, cur, parts);
                           for (const auto &s : parts) {
                               auto r = count_F_classes(s);
                               ++cases;
                               failures += !r.verified;
                               literal_failures += !r.literal_product_holds;
                           }
                       }
                       std::string note = std::to_string(cases) + " multiplicity lists; class size prod s_i! holds in all; "
                                          "literal prod s_i fails in " + std::to_string(literal_failures);
                       return Outcome{double(failures), 0.0, note};
                   }});
    out.push_back({"c09.dual-generators", 9, "graphs", "rotationless cycle enumeration", [] {
                       long worst = 0;
                       for (int D = 1; D <= 6; ++D) {
                           long rotationless = 0;
                           for (auto &o : naive_orbits(D))
                               if (o.size() == o.begin()->size() / 2) ++rotationless;
                           worst = std::max(worst, std::labs(rotationless - long(enumerate_rotationless_cycles(D).size())));
                       }
                       return Outcome{double(worst), 0.0, ""};
                   }});
}

void degeneration(const VerifyOptions &opt, std::vector<Check> &out) {
    for (const auto &pr : pairs) {
        std::string tag(pr.name);
        out.push_back({"c10.degeneration." + tag, 10, "oracles", "genus-one factorization at eps = 0", [=] {
                           SewingPoint p = make_point(pr.t1, pr.t2, 0.0);
                           TorusModulus m1(pr.t1), m2(pr.t2);
                           cplx e1 = dedekind_eta(m1), e2 = dedekind_eta(m2);
                           double worst = 0.0;
                           for (int l : {1, 2, 24})
                               worst = std::max(worst, relative(z2_heisenberg(p, opt.K, l).value, std::pow(e1 * e2, -l)));
                           const double a1 = 1.0, a2 = -2.0;
                           cplx qa = std::exp(0.5 * a1 * a1 * m1.log_q() + 0.5 * a2 * a2 * m2.log_q());
                           worst = std::max(worst, relative(z2_module_pair(a1, a2, p, opt.K).value, qa / (e1 * e2)));

                           // theta_L(q) = sum over L of q^{(v,v)/2}
                           Eigen::MatrixXi g(2, 2);
                           g << 2, -1, -1, 2;
                           for (const auto &gram : {Eigen::MatrixXi(Eigen::MatrixXi::Constant(1, 1, 2)), g}) {
                               EvenLattice L(gram);
                               auto theta1 = [&](const TorusModulus &m) {
                                   cplx s = 0.0;
                                   for (const auto &v : lattice_vectors(L.gram, 60.0))
                                       s += std::exp(0.5 * double(L.norm(v)) * m.log_q());
                                   return s;
                               };
                               cplx expect = theta1(m1) * theta1(m2) / std::pow(e1 * e2, L.rank());
                               worst = std::max(worst, relative(z2_lattice(L, p, opt.K).value, expect));
                           }

                           Characteristics ch{{0.25, -0.5}, {0.1, 0.6}};
                           cplx phase = std::exp(-two_pi_i * (0.25 * 0.1 - 0.5 * 0.6));
                           cplx expect = phase * jacobi_theta(0.25, 0.1, m1) * jacobi_theta(-0.5, 0.6, m2) / (e1 * e2);
                           worst = std::max(worst, relative(z2_fermion_orbifold(ch, p, opt.K).value, expect));
                           return Outcome{worst, 1e-12, ""};
                       }});
    }
}

} // namespace

const std::vector<std::string> &verify_suites() {
    static const std::vector<std::string> s = {"all", "geometry", "graphs", "oracles", "modular", "npoint"};
    return s;
}

std::vector<CheckResult> run_verification(const VerifyOptions &opt) {
    const auto &suites = verify_suites();
    if (std::find(suites.begin(), suites.end(), opt.suite) == suites.end())
        throw DomainError("unknown verification suite: " + opt.suite);

    std::vector<Check> checks;
    determinant_oracle(opt, checks);
    product_formulas(opt, checks);
    module_oracle(opt, checks);
    lattice_consistency(opt, checks);
    equivariance(opt, checks);
    automorphy(opt, checks);
    geometry(opt, checks);
    npoint_checks(opt, checks);
    combinatorics(opt, checks);
    degeneration(opt, checks);
    if (opt.suite != "all")
        checks.erase(std::remove_if(checks.begin(), checks.end(), [&](const Check &c) { return c.suite != opt.suite; }),
                     checks.end());

    std::vector<std::future<CheckResult>> jobs;
    for (const auto &c : checks)
        jobs.push_back(std::async(std::launch::async, [c] {
            CheckResult r{c.id, c.criterion, c.suite, c.anchor, 0.0, 0.0, false, ""};
            try {
                auto o = c.run();
                r.residual = o.residual;
                r.tolerance = o.tolerance;
                r.note = o.note;
                r.pass = std::isfinite(o.residual) && o.residual <= o.tolerance;
            } catch (const std::exception &e) {
                r.residual = std::numeric_limits<double>::infinity();
                r.note = std::string("error: ") + e.what();
            }
            return r;
        }));
    std::vector<CheckResult> results;
    for (auto &j : jobs) results.push_back(j.get());
    std::sort(results.begin(), results.end(), [](const CheckResult &a, const CheckResult &b) { return a.id < b.id; });
    return results;
}

} // namespace g2sew
