#ifndef G2SEW_THETA_HPP
#define G2SEW_THETA_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "g2sew/series.hpp"

namespace g2sew {

inline constexpr double default_theta_tol = 1e-12;

struct EvenLattice {
    Eigen::MatrixXi gram;

    explicit EvenLattice(Eigen::MatrixXi g);  // throws DomainError unless even, symmetric, positive definite
    int rank() const { return static_cast<int>(gram.rows()); }
    int norm(const Eigen::VectorXi &v) const { return v.dot(gram * v); }
    int inner(const Eigen::VectorXi &u, const Eigen::VectorXi &v) const { return u.dot(gram * v); }
};

struct Characteristics {
    std::array<double, 2> lambda{0.0, 0.0};
    std::array<double, 2> mu{0.0, 0.0};
};

// every v with v^T gram v <= R, once each
std::vector<Eigen::VectorXi> lattice_vectors(const Eigen::MatrixXi &gram, double R);

struct ThetaValue {
    cplx value;
    double tail = 0.0;  // sum of |terms| on the outermost retained shell
    double cutoff = 0.0;
};

// R <= 0 picks a cutoff from the smallest eigenvalue of Im Omega.  Throws CutoffError when the tail
// exceeds tol * max(1, |value|).
ThetaValue siegel_theta2(const EvenLattice &L, const Eigen::Matrix2cd &Omega, double R = 0.0,
                         double tol = default_theta_tol);
ThetaValue riemann_theta2(const Characteristics &ch, const Eigen::Matrix2cd &Omega, double R = 0.0,
                          double tol = default_theta_tol);
cplx jacobi_theta(double lambda, double mu, const TorusModulus &m);

// d/dOmega_ij, summed term by term.  (i, j) is 1-based with i <= j.
ThetaValue siegel_theta2_derivative(int i, int j, const EvenLattice &L, const Eigen::Matrix2cd &Omega, double R = 0.0,
                                    double tol = default_theta_tol);
ThetaValue riemann_theta2_derivative(int i, int j, const Characteristics &ch, const Eigen::Matrix2cd &Omega,
                                     double R = 0.0, double tol = default_theta_tol);

// smallest eigenvalue of Im Omega; DomainError unless positive
double im_part_min_eigenvalue(const Eigen::Matrix2cd &Omega);

} // namespace g2sew

#endif
