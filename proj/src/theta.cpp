#include "g2sew/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>

#include "g2sew/errors.hpp"

namespace g2sew {

namespace {

const cplx I(0.0, 1.0);

// -log(1e-16)
constexpr double gaussian_digits = 36.85;

void check_tail(const ThetaValue &t, double tol, const char *what) {
    if (t.tail > tol * std::max(1.0, std::abs(t.value)))
        throw CutoffError(std::string(what) + ": cutoff too small, tail estimate " + std::to_string(t.tail));
}

void enumerate_rec(int i, const Eigen::MatrixXd &U, double R, Eigen::VectorXi &v, std::vector<Eigen::VectorXi> &out,
                   const Eigen::MatrixXi &gram) {
    int n = static_cast<int>(U.rows());
    if (i < 0) {
        if (v.dot(gram * v) <= R) out.push_back(v);
        return;
    }
    double used = 0.0;
    for (int k = i + 1; k < n; ++k) {
        double s = 0.0;
        for (int j = k; j < n; ++j) s += U(k, j) * v(j);
        used += s * s;
    }
    double c = 0.0;
    for (int j = i + 1; j < n; ++j) c += U(i, j) * v(j);
    double rem = R - used + 1e-9;
    if (rem < 0) return;
    double w = std::sqrt(rem);
    int lo = static_cast<int>(std::ceil((-c - w) / U(i, i)));
    int hi = static_cast<int>(std::floor((-c + w) / U(i, i)));
    for (int x = lo; x <= hi; ++x) {
        v(i) = x;
        enumerate_rec(i - 1, U, R, v, out, gram);
    }
    v(i) = 0;
}

double default_lattice_cutoff(const Eigen::Matrix2cd &Omega) {
    return gaussian_digits / (pi * im_part_min_eigenvalue(Omega));
}

double default_box_cutoff(const Eigen::Matrix2cd &Omega) {
    return std::sqrt(gaussian_digits / (pi * im_part_min_eigenvalue(Omega))) + 1.0;
}

// weight(na, ab, nb) multiplies each term
ThetaValue siegel_sum(const EvenLattice &L, const Eigen::Matrix2cd &Omega, double R, double tol,
                      const std::function<cplx(int, int, int)> &weight) {
    im_part_min_eigenvalue(Omega);
    if (R <= 0.0) R = default_lattice_cutoff(Omega);
    ThetaValue out{0.0, 0.0, R};
    if (L.rank() == 0) {
        out.value = weight(0, 0, 0);
        return out;
    }
    auto V = lattice_vectors(L.gram, R);
    std::vector<int> norms(V.size());
    int top = 0;
    for (std::size_t i = 0; i < V.size(); ++i) top = std::max(top, norms[i] = L.norm(V[i]));
    for (std::size_t a = 0; a < V.size(); ++a)
        for (std::size_t b = 0; b < V.size(); ++b) {
            int na = norms[a], nb = norms[b], ab = L.inner(V[a], V[b]);
            cplx t = weight(na, ab, nb) *
                     std::exp(I * pi * (double(na) * Omega(0, 0) + 2.0 * ab * Omega(0, 1) + double(nb) * Omega(1, 1)));
            out.value += t;
            if (std::max(na, nb) == top && top > 0) out.tail += std::abs(t);
        }
    // nothing beyond the origin, so no shell bounds the rest
    if (top == 0) out.tail = std::numeric_limits<double>::infinity();
    check_tail(out, tol, "siegel_theta2");
    return out;
}

ThetaValue riemann_sum(const Characteristics &ch, const Eigen::Matrix2cd &Omega, double R, double tol,
                       const std::function<cplx(double, double)> &weight) {
    im_part_min_eigenvalue(Omega);
    if (R <= 0.0) R = default_box_cutoff(Omega);
    ThetaValue out{0.0, 0.0, R};
    auto range = [&](double l) {
        return std::pair<int, int>{static_cast<int>(std::ceil(-R - l)), static_cast<int>(std::floor(R - l))};
    };
    auto [lo1, hi1] = range(ch.lambda[0]);
    auto [lo2, hi2] = range(ch.lambda[1]);
    for (int m1 = lo1; m1 <= hi1; ++m1)
        for (int m2 = lo2; m2 <= hi2; ++m2) {
            double n1 = m1 + ch.lambda[0], n2 = m2 + ch.lambda[1];
            cplx t = weight(n1, n2) * std::exp(I * pi * (n1 * n1 * Omega(0, 0) + 2.0 * n1 * n2 * Omega(0, 1) +
                                                         n2 * n2 * Omega(1, 1)) +
                                               2.0 * pi * I * (n1 * ch.mu[0] + n2 * ch.mu[1]));
            out.value += t;
            if (std::max(std::abs(n1), std::abs(n2)) > R - 1.0) out.tail += std::abs(t);
        }
    check_tail(out, tol, "riemann_theta2");
    return out;
}

// An explicit cutoff is used as given; the default one grows until the outer shell is negligible.
ThetaValue widen(double R, double (*initial)(const Eigen::Matrix2cd &), const Eigen::Matrix2cd &Omega,
                 const std::function<ThetaValue(double)> &sum) {
    if (R > 0.0) return sum(R);
    double r = initial(Omega);
    for (int k = 0;; ++k, r *= 1.5) {
        try {
            return sum(r);
        } catch (const CutoffError &) {
            if (k == 8) throw;
        }
    }
}

void check_index(int i, int j) {
    if (i < 1 || j > 2 || i > j) throw DomainError("theta derivative: need 1 <= i <= j <= 2");
}

} // namespace

EvenLattice::EvenLattice(Eigen::MatrixXi g) : gram(std::move(g)) {
    if (gram.rows() != gram.cols()) throw DomainError("EvenLattice: gram matrix must be square");
    if (gram != gram.transpose()) throw DomainError("EvenLattice: gram matrix must be symmetric");
    for (int i = 0; i < gram.rows(); ++i)
        if (gram(i, i) % 2 != 0) throw DomainError("EvenLattice: diagonal entries must be even");
    if (gram.rows() > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(gram.cast<double>());
        if (llt.info() != Eigen::Success) throw DomainError("EvenLattice: gram matrix must be positive definite");
    }
}

double im_part_min_eigenvalue(const Eigen::Matrix2cd &Omega) {
    Eigen::Matrix2d Y = Omega.imag();
    Y = 0.5 * (Y + Y.transpose()).eval();
    double lmin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(Y).eigenvalues()(0);
    if (!(lmin > 0.0)) throw DomainError("theta: Im Omega must be positive definite");
    return lmin;
}

std::vector<Eigen::VectorXi> lattice_vectors(const Eigen::MatrixXi &gram, double R) {
    std::vector<Eigen::VectorXi> out;
    int n = static_cast<int>(gram.rows());
    if (R < 0) return out;
    if (n == 0) {
        out.emplace_back(0);
        return out;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram.cast<double>());
    if (llt.info() != Eigen::Success) throw DomainError("lattice_vectors: gram matrix must be positive definite");
    Eigen::MatrixXd U = llt.matrixU();
    Eigen::VectorXi v = Eigen::VectorXi::Zero(n);
    enumerate_rec(n - 1, U, R, v, out, gram);
    return out;
}

ThetaValue siegel_theta2(const EvenLattice &L, const Eigen::Matrix2cd &Omega, double R, double tol) {
    return widen(R, default_lattice_cutoff, Omega,
                 [&](double r) { return siegel_sum(L, Omega, r, tol, [](int, int, int) { return cplx(1.0); }); });
}

ThetaValue riemann_theta2(const Characteristics &ch, const Eigen::Matrix2cd &Omega, double R, double tol) {
    return widen(R, default_box_cutoff, Omega,
                 [&](double r) { return riemann_sum(ch, Omega, r, tol, [](double, double) { return cplx(1.0); }); });
}

cplx jacobi_theta(double lambda, double mu, const TorusModulus &m) {
    cplx tau = m.tau();
    if (!(tau.imag() > 0.0)) throw DomainError("jacobi_theta: Im tau must be positive");
    int M = static_cast<int>(std::ceil(std::sqrt(42.0 / (pi * tau.imag())) + std::abs(lambda))) + 2;
    cplx s = 0.0;
    for (int k = -M; k <= M; ++k) {
        double n = k + lambda;
        s += std::exp(I * pi * n * n * tau + 2.0 * pi * I * n * mu);
    }
    return s;
}

ThetaValue siegel_theta2_derivative(int i, int j, const EvenLattice &L, const Eigen::Matrix2cd &Omega, double R,
                                    double tol) {
    check_index(i, j);
    return widen(R, default_lattice_cutoff, Omega, [&](double r) {
        return siegel_sum(L, Omega, r, tol, [&](int na, int ab, int nb) {
            double c = i == j ? (i == 1 ? na : nb) : 2.0 * ab;
            return I * pi * c;
        });
    });
}

ThetaValue riemann_theta2_derivative(int i, int j, const Characteristics &ch, const Eigen::Matrix2cd &Omega, double R,
                                     double tol) {
    check_index(i, j);
    return widen(R, default_box_cutoff, Omega, [&](double r) {
        return riemann_sum(ch, Omega, r, tol, [&](double n1, double n2) {
            double c = i == j ? (i == 1 ? n1 * n1 : n2 * n2) : 2.0 * n1 * n2;
            return I * pi * c;
        });
    });
}

} // namespace g2sew
