#include "g2sew/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace g2sew {

namespace {

std::vector<int> rotate(const std::vector<int> &w, int s)
{
    std::vector<int> out(w.size());
    const int n = static_cast<int>(w.size());
    for (int j = 0; j < n; ++j) out[j] = w[(j + s) % n];
    return out;
}

// all label sequences of the given length parity with sum <= cap
template <class Visit>
void compositions(int cap, std::vector<int> &cur, int parity, Visit &&visit)
{
    if (static_cast<int>(cur.size()) % 2 == parity) visit(cur);
    for (int k = 1; k <= cap; ++k) {
        cur.push_back(k);
        compositions(cap - k, cur, parity, visit);
        cur.pop_back();
    }
}

void check_labels(const std::vector<int> &labels, const Sewing &s)
{
    for (int k : labels)
        if (k < 1 || k > s.K()) throw DomainError("graph label exceeds the A-matrix truncation");
}

cplx necklace_weight(const ChequeredNecklace &n, const Sewing &s, const CRow *ah, const CRow *at)
{
    if (n.trivial) return 1.0;
    check_labels(n.interior, s);
    const int m = static_cast<int>(n.interior.size());
    // node j = 0..m+1; labels of unmarked nodes
    auto label = [&](int j) {
        if (j == 0 || j == m + 1) return 1;
        return n.interior[j - 1];
    };
    cplx w = 1.0;
    for (int e = 0; e <= m; ++e) {
        const int par = (e % 2 == 0) ? n.first_edge_parity : 3 - n.first_edge_parity;
        const bool left_marked = e == 0 && n.head.marked;
        const bool right_marked = e == m && n.tail.marked;
        if (left_marked && right_marked) {
            const cplx d = n.head.x.z - n.tail.x.z;
            if (d == cplx{}) throw PoleError("coincident points");
            w *= elliptic_P_torus(2, s.point().tau(par), d);
        }
        else if (left_marked) {
            w *= (*ah)(label(e + 1) - 1);
        }
        else if (right_marked) {
            w *= (*at)(label(e) - 1);
        }
        else {
            w *= s.A(par)(label(e) - 1, label(e + 1) - 1);
        }
        if (w == cplx{}) break;
    }
    return w;
}

CRow end_vector(const NecklaceEnd &e, const Sewing &s)
{
    if (!e.marked) return {};
    s.validate(e.x);
    return s.a_vector(e.x.sheet, e.x.z);
}

} // namespace

int ChequeredCycle::degree() const { return std::accumulate(labels.begin(), labels.end(), 0); }

int rotation_group_order(const ChequeredCycle &c)
{
    const int n = c.size();
    if (n == 0) return 1;
    int order = 0;
    for (int s = 0; s < n; s += 2)
        if (rotate(c.labels, s) == c.labels) ++order;
    return order;
}

ChequeredCycle canonical_form(const ChequeredCycle &c)
{
    std::vector<int> base = c.labels;
    // a cycle starting with parity 2 is the odd rotation of one starting with parity 1
    if (c.first_edge_parity == 2 && !base.empty()) base = rotate(base, 1);
    std::vector<int> best = base;
    for (int s = 2; s < static_cast<int>(base.size()); s += 2) best = std::min(best, rotate(base, s));
    return {best, 1};
}

bool is_distinguished(const ChequeredCycle &c, int node)
{
    const int n = c.size();
    const int in = c.edge_parity((node - 1 + n) % n);
    return c.labels[node] == 1 && in == 2 && c.edge_parity(node) == 1;
}

int distinguished_count(const ChequeredCycle &c)
{
    int count = 0;
    for (int j = 0; j < c.size(); ++j) count += is_distinguished(c, j) ? 1 : 0;
    return count;
}

std::vector<ChequeredCycle> enumerate_rotationless_cycles(int max_degree)
{
    if (max_degree < 0) throw DomainError("degree cap must be non-negative");
    std::vector<ChequeredCycle> out;
    std::vector<int> cur;
    compositions(max_degree, cur, 0, [&](const std::vector<int> &w) {
        if (w.empty()) return;
        ChequeredCycle c{w, 1};
        if (rotation_group_order(c) == 1 && canonical_form(c) == c) out.push_back(c);
    });
    std::sort(out.begin(), out.end(), [](const ChequeredCycle &a, const ChequeredCycle &b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.labels < b.labels;
    });
    return out;
}

R21L21 enumerate_R21_L21(int max_degree)
{
    R21L21 out;
    for (auto &c : enumerate_rotationless_cycles(max_degree)) {
        const int d = distinguished_count(c);
        if (d >= 1) out.R21.push_back(c);
        if (d == 1) out.L21.push_back(c);
    }
    return out;
}

int ChequeredNecklace::last_edge_parity() const
{
    const int m = static_cast<int>(interior.size());
    return m % 2 == 0 ? first_edge_parity : 3 - first_edge_parity;
}

double ChequeredNecklace::degree() const
{
    if (trivial) return 0.0;
    const int plain = (head.marked ? 0 : 1) + (tail.marked ? 0 : 1);
    return std::accumulate(interior.begin(), interior.end(), 0) + 0.5 * plain;
}

std::vector<ChequeredNecklace> enumerate_necklaces(int a, int b, double max_degree, const NecklaceEnd &head,
                                                   const NecklaceEnd &tail)
{
    if ((a != 1 && a != 2) || (b != 1 && b != 2)) throw DomainError("edge parities must be 1 or 2");
    if (head.marked && head.x.sheet != a) throw DomainError("a marked end fixes the parity of its edge");
    if (tail.marked && tail.x.sheet != b) throw DomainError("a marked end fixes the parity of its edge");
    std::vector<ChequeredNecklace> out;
    const int plain = (head.marked ? 0 : 1) + (tail.marked ? 0 : 1);
    if (a != b && plain == 2) {
        ChequeredNecklace n0;
        n0.trivial = true;
        n0.first_edge_parity = a;
        out.push_back(n0);
    }
    const int cap = static_cast<int>(std::floor(max_degree - 0.5 * plain + 1e-9));
    if (cap < 0) return out;
    std::vector<int> cur;
    compositions(cap, cur, a == b ? 0 : 1, [&](const std::vector<int> &w) { out.push_back({w, a, head, tail, false}); });
    return out;
}

cplx zeta_weight(const ChequeredCycle &c, const Sewing &s)
{
    check_labels(c.labels, s);
    cplx w = 1.0;
    const int n = c.size();
    for (int j = 0; j < n && w != cplx{}; ++j) w *= s.A(c.edge_parity(j))(c.labels[j] - 1, c.labels[(j + 1) % n] - 1);
    return w;
}

cplx zeta_weight(const ChequeredNecklace &n, const Sewing &s)
{
    const CRow ah = end_vector(n.head, s), at = end_vector(n.tail, s);
    return necklace_weight(n, s, &ah, &at);
}

cplx necklace_sum(int a, int b, const NecklaceEnd &head, const NecklaceEnd &tail, const Sewing &s, double max_degree)
{
    const CRow ah = end_vector(head, s), at = end_vector(tail, s);
    cplx sum = 0.0;
    for (const auto &n : enumerate_necklaces(a, b, max_degree, head, tail)) sum += necklace_weight(n, s, &ah, &at);
    return sum;
}

cplx zeta_ab(int a, int b, const SewingPoint &p, int max_degree)
{
    return necklace_sum(a, b, {}, {}, Sewing(p, std::max(max_degree, 2)), max_degree);
}

cplx product_det(const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    cplx prod = 1.0;
    for (const auto &c : enumerate_rotationless_cycles(max_degree)) prod *= 1.0 - zeta_weight(c, s);
    return prod;
}

cplx product_zeta12_resolvent(const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    cplx prod = 1.0;
    for (const auto &c : enumerate_R21_L21(max_degree).R21) prod /= 1.0 - zeta_weight(c, s);
    return prod;
}

cplx loop_sum_resolvent(const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    cplx sum = 0.0;
    for (const auto &c : enumerate_R21_L21(max_degree).L21) sum += zeta_weight(c, s);
    return 1.0 / (1.0 - sum);
}

PeriodMatrix period_matrix_graph(const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    const cplx f = p.eps / two_pi_i;
    PeriodMatrix out;
    out.omega11 = p.tau1.tau() + f * necklace_sum(2, 2, {}, {}, s, max_degree);
    out.omega22 = p.tau2.tau() + f * necklace_sum(1, 1, {}, {}, s, max_degree);
    out.omega12 = -f * necklace_sum(1, 2, {}, {}, s, max_degree);
    return out;
}

cplx omega2_graph(const SheetPoint &x, const SheetPoint &y, const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    const cplx sum = necklace_sum(x.sheet, y.sheet, {true, x}, {true, y}, s, max_degree);
    return x.sheet == y.sheet ? sum : -sum;
}

cplx nu_graph(int i, const SheetPoint &x, const SewingPoint &p, int max_degree)
{
    const Sewing s(p, std::max(max_degree, 2));
    const int a = x.sheet;
    if (i == a) return 1.0 + p.sqrt_eps * necklace_sum(a, 3 - a, {true, x}, {}, s, max_degree);
    return -p.sqrt_eps * necklace_sum(a, a, {true, x}, {}, s, max_degree);
}

void write_cycles_csv(std::ostream &os, const std::vector<ChequeredCycle> &cycles, const Sewing *s)
{
    os << "degree,labels,parities,weight_re,weight_im\n";
    os.precision(17);
    for (const auto &c : cycles) {
        os << c.degree() << ',';
        for (int j = 0; j < c.size(); ++j) os << (j ? " " : "") << c.labels[j];
        os << ',';
        for (int j = 0; j < c.size(); ++j) os << (j ? " " : "") << c.edge_parity(j);
        if (s) {
            const cplx w = zeta_weight(c, *s);
            os << ',' << w.real() << ',' << w.imag() << '\n';
        }
        else {
            os << ",,\n";
        }
    }
}

int word_rotation_order(const std::vector<int> &w)
{
    const int n = static_cast<int>(w.size());
    if (n == 0) return 1;
    int order = 0;
    for (int s = 0; s < n; ++s)
        if (rotate(w, s) == w) ++order;
    return order;
}

ReducedForm reduced_F_form(const LabeledPermutation &p)
{
    const int n = static_cast<int>(p.perm.size());
    if (static_cast<int>(p.labels.size()) != n) throw DomainError("labeling must cover the permuted set");
    ReducedForm out;
    std::vector<bool> seen(n, false);
    for (int t = 0; t < n; ++t) {
        if (seen[t]) continue;
        std::vector<int> word;
        for (int u = t; !seen[u]; u = p.perm[u]) {
            if (u < 0 || u >= n) throw DomainError("not a permutation");
            seen[u] = true;
            word.push_back(p.labels[u]);
        }
        const int r = word_rotation_order(word);
        std::vector<int> root(word.begin(), word.begin() + static_cast<long>(word.size()) / r);
        std::vector<int> best = root;
        for (int s = 1; s < static_cast<int>(root.size()); ++s) best = std::min(best, rotate(root, s));
        out[best] += r;
    }
    return out;
}

FClassCount count_F_classes(const std::vector<int> &multiplicities)
{
    std::vector<int> labels;
    long fact_prod = 1, plain_prod = 1;
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
        const int s = multiplicities[i];
        if (s < 0) throw DomainError("multiplicities must be non-negative");
        for (int j = 0; j < s; ++j) labels.push_back(static_cast<int>(i));
        for (int j = 2; j <= s; ++j) fact_prod *= j;
        if (s > 0) plain_prod *= s;
    }
    const int n = static_cast<int>(labels.size());
    if (n > 8) throw DomainError("brute force limited to |T| <= 8");

    std::map<ReducedForm, long> classes;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long total = 0;
    do {
        ++classes[reduced_F_form({perm, labels})];
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));

    FClassCount out;
    out.classes = static_cast<long>(classes.size());
    for (const auto &kv : classes) out.class_sizes.push_back(kv.second);
    out.expected_size = fact_prod;
    out.expected_classes = total / fact_prod;
    out.verified = out.classes == out.expected_classes
        && std::all_of(out.class_sizes.begin(), out.class_sizes.end(), [&](long v) { return v == fact_prod; });
    out.literal_product_holds = std::all_of(out.class_sizes.begin(), out.class_sizes.end(), [&](long v) { return v == plain_prod; });
    return out;
}

} // namespace g2sew
