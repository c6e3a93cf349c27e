#ifndef G2SEW_CLI_IO_HPP
#define G2SEW_CLI_IO_HPP

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2sew/errors.hpp"
#include "g2sew/partition.hpp"
#include "g2sew/verify.hpp"

namespace g2sew::cli {

using nlohmann::json;

inline double parse_real(const std::string &s)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw DomainError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw DomainError("not a number: '" + s + "'");
    return v;
}

// "re+imi", "re", "imi", "-i"; whitespace ignored
inline cplx parse_complex(const std::string &text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw DomainError("empty complex number");
    if (s.back() != 'i' && s.back() != 'j') return parse_real(s);
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    double y = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im);
    return {re.empty() ? 0.0 : parse_real(re), y};
}

inline std::vector<double> parse_list(const std::string &s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(item));
    return out;
}

// "2" or "2,-1;-1,2"
inline Eigen::MatrixXi parse_gram(const std::string &s)
{
    std::vector<std::vector<double>> rows;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_list(row));
    int n = static_cast<int>(rows.size());
    Eigen::MatrixXi g(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw DomainError("gram matrix must be square");
        for (int j = 0; j < n; ++j) {
            double v = rows[i][j];
            if (v != std::round(v)) throw DomainError("gram matrix must be integral");
            g(i, j) = static_cast<int>(v);
        }
    }
    return g;
}

inline json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline cplx complex_from_json(const json &j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

inline json to_json(const Eigen::Matrix2cd &m)
{
    return json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}), json::array({to_json(m(1, 0)), to_json(m(1, 1))})});
}

inline json to_json(const PartitionResult &r)
{
    return {{"value", to_json(r.value)},
            {"breakdown",
             {{"z1_left", to_json(r.breakdown.z1_left)},
              {"z1_right", to_json(r.breakdown.z1_right)},
              {"det_factor", to_json(r.breakdown.det_factor)},
              {"theta_factor", to_json(r.breakdown.theta_factor)}}},
            {"truncation",
             {{"K", r.truncation.K}, {"D", r.truncation.D}, {"N", r.truncation.N}, {"cutoff", r.truncation.cutoff}}},
            {"rank", r.rank},
            {"est_error", r.est_error}};
}

inline json to_json(const CheckResult &r)
{
    return {{"check_id", r.id},     {"criterion", r.criterion}, {"suite", r.suite}, {"anchor", r.anchor},
            {"residual", r.residual}, {"tolerance", r.tolerance}, {"pass", r.pass},   {"note", r.note}};
}

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline std::string format_double(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

inline void write_checks_csv(std::ostream &os, const std::vector<CheckResult> &rs)
{
    os << "check_id,anchor,residual,tolerance,pass\n";
    for (const auto &r : rs)
        os << csv_field(r.id) << ',' << csv_field(r.anchor) << ',' << format_double(r.residual) << ','
           << format_double(r.tolerance) << ',' << (r.pass ? "true" : "false") << '\n';
}

} // namespace g2sew::cli

#endif
