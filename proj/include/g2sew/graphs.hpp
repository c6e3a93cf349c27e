#ifndef G2SEW_GRAPHS_HPP
#define G2SEW_GRAPHS_HPP

#include <map>
#include <ostream>
#include <vector>

#include "g2sew/sewing.hpp"

namespace g2sew {

inline constexpr int default_D = 10;

// Clockwise polygon k_1 ... k_2n; the edge leaving node j (0-based) has parity 1 for even j when
// first_edge_parity = 1.  Weight A_1(k1,k2) A_2(k2,k3) ... A_2(k_2n,k1).
struct ChequeredCycle {
    std::vector<int> labels;
    int first_edge_parity = 1;

    int size() const { return static_cast<int>(labels.size()); }
    int degree() const;
    int edge_parity(int j) const { return (j % 2 == 0) == (first_edge_parity == 1) ? 1 : 2; }
    bool operator==(const ChequeredCycle &o) const = default;
    auto operator<=>(const ChequeredCycle &o) const = default;
};

int rotation_group_order(const ChequeredCycle &c);
// Lexicographically minimal parity-preserving rotation, rewritten with first edge parity 1.
ChequeredCycle canonical_form(const ChequeredCycle &c);
// Label 1 with incoming edge of parity 2 and outgoing edge of parity 1.
bool is_distinguished(const ChequeredCycle &c, int node);
int distinguished_count(const ChequeredCycle &c);

std::vector<ChequeredCycle> enumerate_rotationless_cycles(int max_degree);

struct R21L21 {
    std::vector<ChequeredCycle> R21;  // rotationless, at least one distinguished node
    std::vector<ChequeredCycle> L21;  // exactly one distinguished node
};
R21L21 enumerate_R21_L21(int max_degree);

struct NecklaceEnd {
    bool marked = false;  // false: valence-one node labeled 1; true: the point x
    SheetPoint x;
};

// Linear chain head -p-> k_1 -> ... -> k_m -> tail with alternating edge parities.
struct ChequeredNecklace {
    std::vector<int> interior;
    int first_edge_parity = 1;
    NecklaceEnd head, tail;
    bool trivial = false;  // N_0, weight 1

    int edge_count() const { return trivial ? 0 : static_cast<int>(interior.size()) + 1; }
    int last_edge_parity() const;
    double degree() const;
};

// Necklaces whose first and last edges have parities a and b, of degree <= max_degree.
// Marked ends force the parity of their edge to the sheet of the point.
std::vector<ChequeredNecklace> enumerate_necklaces(int a, int b, double max_degree, const NecklaceEnd &head = {},
                                                   const NecklaceEnd &tail = {});

// Weights use the A-matrices and a-vectors of the context, whose K must cover every label.
cplx zeta_weight(const ChequeredCycle &c, const Sewing &s);
cplx zeta_weight(const ChequeredNecklace &n, const Sewing &s);

cplx zeta_ab(int a, int b, const SewingPoint &p, int max_degree = default_D);
cplx necklace_sum(int a, int b, const NecklaceEnd &head, const NecklaceEnd &tail, const Sewing &s, double max_degree);

cplx product_det(const SewingPoint &p, int max_degree = default_D);
cplx product_zeta12_resolvent(const SewingPoint &p, int max_degree = default_D);
// (1 - sum over L21 of zeta)^{-1}
cplx loop_sum_resolvent(const SewingPoint &p, int max_degree = default_D);

PeriodMatrix period_matrix_graph(const SewingPoint &p, int max_degree = default_D);
cplx omega2_graph(const SheetPoint &x, const SheetPoint &y, const SewingPoint &p, int max_degree = default_D);
cplx nu_graph(int i, const SheetPoint &x, const SewingPoint &p, int max_degree = default_D);

// degree,labels,parities,weight_re,weight_im
void write_cycles_csv(std::ostream &os, const std::vector<ChequeredCycle> &cycles, const Sewing *s = nullptr);

// ---- words on cycles and the reduced F-form

// Order of the subgroup of all rotations fixing the word.
int word_rotation_order(const std::vector<int> &w);

struct LabeledPermutation {
    std::vector<int> perm;    // perm[t] is the image of t
    std::vector<int> labels;  // F(t)
};

// canonical rotationless word -> total exponent
using ReducedForm = std::map<std::vector<int>, int>;

ReducedForm reduced_F_form(const LabeledPermutation &p);

struct FClassCount {
    long classes = 0;
    std::vector<long> class_sizes;
    long expected_size = 0;     // prod s_i!
    long expected_classes = 0;  // |T|! / prod s_i!
    bool verified = false;
    bool literal_product_holds = false;  // every class has prod s_i elements
};

// Brute force over the symmetric group of T, |T| = sum s_i <= 8.
FClassCount count_F_classes(const std::vector<int> &multiplicities);

} // namespace g2sew

#endif
