// gaussian.hpp — covariance-matrix algebra for N-mode Gaussian states
//
// Quadrature ordering is (x1,p1,x2,p2,...); vacuum = identity (hbar = 1).
// All types are immutable values and all operations are pure functions, so
// everything here may be shared and called from any number of threads.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace steersat::gaussian {

// Real symmetric 2N x 2N second-moment matrix. Construction enforces shape,
// finiteness and symmetry (|s_ij - s_ji| <= 1e-12 * max(1, |s_ij|)), then
// symmetrizes; physicality is checked separately via is_bona_fide so that
// unphysical matrices can still be inspected.
class CovMatrix {
public:
    static CovMatrix from_matrix(Eigen::MatrixXd m);

    int n_modes() const { return n_modes_; }
    const Eigen::MatrixXd& mat() const { return m_; }

private:
    CovMatrix(int n, Eigen::MatrixXd m) : n_modes_(n), m_(std::move(m)) {}
    int n_modes_;
    Eigen::MatrixXd m_;
};

// Block-diagonal symplectic form, per-mode blocks [[0,1],[-1,0]].
struct SymplecticForm {
    int n_modes;
    Eigen::MatrixXd mat;
};

// Real 2N x 2N matrix with S Omega S^T = Omega (1e-12 entrywise).
class SymplecticTransform {
public:
    static SymplecticTransform from_matrix(Eigen::MatrixXd m);

    int n_modes() const { return n_modes_; }
    const Eigen::MatrixXd& mat() const { return m_; }

private:
    SymplecticTransform(int n, Eigen::MatrixXd m) : n_modes_(n), m_(std::move(m)) {}
    int n_modes_;
    Eigen::MatrixXd m_;
};

SymplecticForm symplectic_form(int n_modes);

// Two-mode squeezed state: cosh(2s) diagonals, sinh(2s) sigma_z off-diagonals.
CovMatrix two_mode_squeezed_cm(double s);

// Four-mode state (b1, b2, b1_perp, b2_perp): TMSS on the first pair, vacuum
// on the orthogonal pair.
CovMatrix initial_four_mode_cm(double s);

// Beam-splitter-type transform mixing (b2, b2_perp) with coefficients theta
// and sqrt(1 - theta^2); b1 untouched, b1_perp negated.
SymplecticTransform lossy_bogoliubov(double theta);

CovMatrix apply_symplectic(const SymplecticTransform& S, const CovMatrix& sigma);

// Principal submatrix on the kept modes, in the order given.
CovMatrix partial_trace(const CovMatrix& sigma, const std::vector<int>& keep);

// Moduli of the eigenvalue pairs of (i Omega sigma), N values, descending.
// Requires sigma positive definite.
std::vector<double> symplectic_eigenvalues(const CovMatrix& sigma);

// Same spectrum through the closed-form symplectic invariants; supports
// n_modes <= 2 only. Independent of the spectral-solver route above.
std::vector<double> symplectic_eigenvalues_closed(const CovMatrix& sigma);

// True iff every symplectic eigenvalue is >= 1 - tol. Never throws.
bool is_bona_fide(const CovMatrix& sigma, double tol);

// Renyi-2 entropy, (1/2) ln det sigma.
double renyi2_entropy(const CovMatrix& sigma);

// B - C^T A^-1 C where the `steered` modes form the B block and the
// complement (the steering party) forms A.
Eigen::MatrixXd schur_complement(const CovMatrix& sigma, const std::vector<int>& steered);

} // namespace steersat::gaussian
