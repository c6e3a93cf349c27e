#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "g2sew/fock.hpp"
#include "g2sew/graphs.hpp"
#include "g2sew/verify.hpp"

using namespace g2sew;
using cli::json;
using cli::to_json;

namespace {

struct Surface {
    std::string tau1 = "2i", tau2 = "2i", eps = "0";
    std::optional<double> margin;
    double phase = 0.0;

    void add_to(CLI::App *c)
    {
        c->add_option("--tau1", tau1, "tau_1 as re+imi")->capture_default_str();
        c->add_option("--tau2", tau2, "tau_2 as re+imi")->capture_default_str();
        c->add_option("--eps", eps, "sewing parameter as re+imi")->capture_default_str();
        c->add_option("--margin", margin, "use |eps| = margin * bound instead of --eps");
        c->add_option("--phase", phase, "argument of eps with --margin")->capture_default_str();
    }
    SewingPoint point() const
    {
        cplx t1 = cli::parse_complex(tau1), t2 = cli::parse_complex(tau2);
        if (margin) return point_at_margin(t1, t2, *margin, phase);
        return make_point(t1, t2, cli::parse_complex(eps));
    }
};

json surface_json(const SewingPoint &p)
{
    return {{"tau1", to_json(p.tau1.tau())}, {"tau2", to_json(p.tau2.tau())}, {"eps", to_json(p.eps)}};
}

Characteristics parse_characteristics(const std::string &lambda, const std::string &mu)
{
    auto l = cli::parse_list(lambda), m = cli::parse_list(mu);
    if (l.size() != 2 || m.size() != 2) throw DomainError("characteristics need two components each");
    return {{l[0], l[1]}, {m[0], m[1]}};
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"genus-two sewing: period matrices, partition functions and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    int K = default_K, D = default_D, N_max = default_N_max;
    double R = 0.0;
    std::string format = "json";
    app.add_option("--K", K, "A-matrix truncation")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--D", D, "graph degree cap")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--N-max", N_max, "Fock order")->check(CLI::Range(0, max_fock_order))->capture_default_str();
    app.add_option("--R", R, "theta cutoff, 0 picks one automatically")->check(CLI::NonNegativeNumber);
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    Surface surf;

    auto *period = app.add_subcommand("period", "period matrix of the sewn surface");
    surf.add_to(period);

    auto *partition = app.add_subcommand("partition", "genus-two partition function");
    surf.add_to(partition);
    std::string family = "boson", gram = "2", lambda = "0,0", mu = "0,0";
    int rank = 1;
    double a1 = 0.0, a2 = 0.0;
    partition->add_option("--family", family)->check(CLI::IsMember({"boson", "module", "lattice", "orbifold"}))
        ->capture_default_str();
    partition->add_option("--rank", rank, "number of bosons")->check(CLI::NonNegativeNumber)->capture_default_str();
    partition->add_option("--alpha1", a1)->capture_default_str();
    partition->add_option("--alpha2", a2)->capture_default_str();
    partition->add_option("--gram", gram, "rows separated by ';', entries by ','")->capture_default_str();
    partition->add_option("--lambda", lambda, "lambda_1,lambda_2")->capture_default_str();
    partition->add_option("--mu", mu, "mu_1,mu_2")->capture_default_str();

    auto *theta = app.add_subcommand("theta", "genus-two theta function at the period matrix");
    surf.add_to(theta);
    std::string omega;
    theta->add_option("--omega", omega, "Omega_11,Omega_12,Omega_22 instead of the sewn period matrix");
    theta->add_option("--gram", gram, "lattice theta for this gram matrix")->capture_default_str();
    auto *th_lambda = theta->add_option("--lambda", lambda, "Riemann theta with characteristics");
    theta->add_option("--mu", mu)->needs(th_lambda);

    auto *verify = app.add_subcommand("verify", "run the acceptance checks");
    VerifyOptions vo;
    std::string inject;
    verify->add_option("--suite", vo.suite)->check(CLI::IsMember(verify_suites()))->capture_default_str();
    verify->add_option("--seed", vo.seed)->capture_default_str();
    verify->add_option("--inject", inject, "mutation smoke test")->check(CLI::IsMember({"liz-sign"}));

    auto *graphs = app.add_subcommand("graphs", "rotationless chequered cycles as CSV");
    surf.add_to(graphs);
    bool weights = false;
    graphs->add_flag("--weights", weights, "evaluate cycle weights at the given surface");

    CLI11_PARSE(app, argc, argv);

    std::cout.precision(17);
    try {
        if (format == "csv" && !verify->parsed() && !graphs->parsed())
            throw DomainError("csv output is only available for verify and graphs");

        if (period->parsed()) {
            SewingPoint p = surf.point();
            auto om = period_matrix(p, K);
            json out = surface_json(p);
            out["omega"] = to_json(om.matrix());
            out["est_error"] = om.est_error;
            out["domain_margin"] = p.margin;
            out["K"] = K;
            std::cout << out.dump(2) << "\n";
        } else if (partition->parsed()) {
            SewingPoint p = surf.point();
            PartitionResult r;
            if (family == "boson") {
                if (rank == 0) throw DomainError("boson rank must be positive");
                r = z2_heisenberg(p, K, rank);
            } else if (family == "module") {
                r = z2_module_pair(a1, a2, p, K);
            } else if (family == "lattice") {
                r = z2_lattice(EvenLattice(cli::parse_gram(gram)), p, K, R);
            } else {
                r = z2_fermion_orbifold(parse_characteristics(lambda, mu), p, K, R);
            }
            json out = surface_json(p);
            out["family"] = family;
            out.update(to_json(r));
            out["normalized"] = to_json(z2_normalized(r, p, K));
            std::cout << out.dump(2) << "\n";
        } else if (theta->parsed()) {
            json out;
            Eigen::Matrix2cd Om;
            if (!omega.empty()) {
                std::vector<cplx> v;
                std::stringstream ss(omega);
                std::string item;
                while (std::getline(ss, item, ',')) v.push_back(cli::parse_complex(item));
                if (v.size() != 3) throw DomainError("--omega needs three entries");
                Om << v[0], v[1], v[1], v[2];
            } else {
                SewingPoint p = surf.point();
                out = surface_json(p);
                Om = period_matrix(p, K).matrix();
            }
            ThetaValue t = th_lambda->count() ? riemann_theta2(parse_characteristics(lambda, mu), Om, R)
                                              : siegel_theta2(EvenLattice(cli::parse_gram(gram)), Om, R);
            out["omega"] = to_json(Om);
            out["value"] = to_json(t.value);
            out["tail"] = t.tail;
            out["cutoff"] = t.cutoff;
            std::cout << out.dump(2) << "\n";
        } else if (verify->parsed()) {
            vo.K = K;
            vo.D = D;
            vo.N_max = N_max;
            vo.inject_liz_sign = inject == "liz-sign";
            auto results = run_verification(vo);
            bool ok = true;
            for (const auto &r : results) ok = ok && r.pass;
            if (format == "csv") {
                cli::write_checks_csv(std::cout, results);
            } else {
                json checks = json::array();
                for (const auto &r : results) checks.push_back(to_json(r));
                json out = {{"suite", vo.suite}, {"seed", vo.seed}, {"pass", ok}, {"checks", checks}};
                std::cout << out.dump(2) << "\n";
            }
            return ok ? 0 : exit_code(ErrorKind::verification);
        } else if (graphs->parsed()) {
            auto cycles = enumerate_rotationless_cycles(D);
            if (weights) {
                SewingPoint p = surf.point();
                Sewing s(p, std::max(K, D));
                write_cycles_csv(std::cout, cycles, &s);
            } else {
                write_cycles_csv(std::cout, cycles);
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return 0;
}
