// gaussian.cpp — covariance-matrix algebra implementation

#include "steersat/gaussian.hpp"

#include "steersat/ddouble.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace steersat::gaussian {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

void require_mode_count(int n) {
    if (n < 1) throw std::invalid_argument("n_modes must be >= 1");
}

// quadrature row/column indices for a list of modes
std::vector<int> quad_indices(const std::vector<int>& modes) {
    std::vector<int> idx;
    idx.reserve(2 * modes.size());
    for (int m : modes) {
        idx.push_back(2 * m);
        idx.push_back(2 * m + 1);
    }
    return idx;
}

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(i, j) = m(rows[i], cols[j]);
    return out;
}

// B - C^T A^-1 C in compensated arithmetic. The complement can sit many
// orders of magnitude below the blocks it is formed from (pure squeezed
// states), where a plain double subtraction would leave only noise.
Eigen::MatrixXd schur_compensated(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  const Eigen::MatrixXd& c) {
    const int n = static_cast<int>(a.rows());
    const int m = static_cast<int>(c.cols());

    // Gaussian elimination with partial pivoting on A | C
    std::vector<std::vector<ddouble>> aug(n, std::vector<ddouble>(n + m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = ddouble(a(i, j));
        for (int j = 0; j < m; ++j) aug[i][n + j] = ddouble(c(i, j));
    }
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(aug[r][k].hi) > std::abs(aug[pivot][k].hi)) pivot = r;
        if (aug[pivot][k].hi == 0.0)
            throw std::invalid_argument("schur_complement: singular steering-party block");
        std::swap(aug[k], aug[pivot]);
        for (int r = k + 1; r < n; ++r) {
            const ddouble factor = aug[r][k] / aug[k][k];
            for (int col = k; col < n + m; ++col)
                aug[r][col] = aug[r][col] - factor * aug[k][col];
        }
    }
    std::vector<std::vector<ddouble>> x(n, std::vector<ddouble>(m));
    for (int col = 0; col < m; ++col)
        for (int r = n - 1; r >= 0; --r) {
            ddouble acc = aug[r][n + col];
            for (int j = r + 1; j < n; ++j) acc = acc - aug[r][j] * x[j][col];
            x[r][col] = acc / aug[r][r];
        }

    Eigen::MatrixXd out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            ddouble acc(b(i, j));
            for (int k = 0; k < n; ++k) acc = acc - ddouble(c(k, i)) * x[k][j];
            out(i, j) = acc.value();
        }
    return out;
}

void check_modes(const std::vector<int>& modes, int n_modes, const char* what) {
    if (modes.empty()) throw std::invalid_argument(std::string(what) + ": empty mode list");
    std::vector<bool> seen(n_modes, false);
    for (int m : modes) {
        if (m < 0 || m >= n_modes)
            throw std::invalid_argument(std::string(what) + ": mode index out of range");
        if (seen[m]) throw std::invalid_argument(std::string(what) + ": duplicate mode index");
        seen[m] = true;
    }
}

} // namespace

CovMatrix CovMatrix::from_matrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0)
        throw std::invalid_argument("CovMatrix: need a square 2N x 2N matrix, N >= 1");
    require_finite(m, "CovMatrix");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > 1e-12 * std::max(1.0, std::abs(m(i, j))))
                throw std::invalid_argument("CovMatrix: matrix not symmetric");
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    const int n = static_cast<int>(sym.rows() / 2);
    return CovMatrix(n, std::move(sym));
}

SymplecticTransform SymplecticTransform::from_matrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0)
        throw std::invalid_argument("SymplecticTransform: need a square 2N x 2N matrix");
    require_finite(m, "SymplecticTransform");
    const int n = static_cast<int>(m.rows() / 2);
    const Eigen::MatrixXd omega = symplectic_form(n).mat;
    const Eigen::MatrixXd residual = m * omega * m.transpose() - omega;
    if (residual.cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("SymplecticTransform: S Omega S^T != Omega");
    return SymplecticTransform(n, std::move(m));
}

SymplecticForm symplectic_form(int n_modes) {
    require_mode_count(n_modes);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        m(2 * k, 2 * k + 1) = 1.0;
        m(2 * k + 1, 2 * k) = -1.0;
    }
    return {n_modes, std::move(m)};
}

CovMatrix two_mode_squeezed_cm(double s) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("two_mode_squeezed_cm: squeezing must be finite and >= 0");
    const double ch = std::cosh(2.0 * s);
    const double sh = std::sinh(2.0 * s);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 2) = m(3, 3) = ch;
    m(0, 2) = m(2, 0) = sh;
    m(1, 3) = m(3, 1) = -sh;
    return CovMatrix::from_matrix(std::move(m));
}

CovMatrix initial_four_mode_cm(double s) {
    const CovMatrix tmss = two_mode_squeezed_cm(s);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(8, 8);
    m.topLeftCorner(4, 4) = tmss.mat();
    return CovMatrix::from_matrix(std::move(m));
}

SymplecticTransform lossy_bogoliubov(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("lossy_bogoliubov: theta must lie in [0, 1]");
    const double tau = std::sqrt(std::max(0.0, (1.0 - theta) * (1.0 + theta)));
    const Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(8, 8);
    // mode order (b1, b2, b1_perp, b2_perp)
    m.block<2, 2>(0, 0) = eye;
    m.block<2, 2>(2, 2) = theta * eye;
    m.block<2, 2>(2, 6) = tau * eye;
    m.block<2, 2>(4, 4) = -eye;
    m.block<2, 2>(6, 2) = tau * eye;
    m.block<2, 2>(6, 6) = -theta * eye;
    return SymplecticTransform::from_matrix(std::move(m));
}

CovMatrix apply_symplectic(const SymplecticTransform& S, const CovMatrix& sigma) {
    if (S.n_modes() != sigma.n_modes())
        throw std::invalid_argument("apply_symplectic: mode count mismatch");
    return CovMatrix::from_matrix(S.mat() * sigma.mat() * S.mat().transpose());
}

CovMatrix partial_trace(const CovMatrix& sigma, const std::vector<int>& keep) {
    check_modes(keep, sigma.n_modes(), "partial_trace");
    const std::vector<int> idx = quad_indices(keep);
    return CovMatrix::from_matrix(select(sigma.mat(), idx, idx));
}

std::vector<double> symplectic_eigenvalues(const CovMatrix& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma.mat());
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("symplectic_eigenvalues: matrix not positive definite");

    const Eigen::MatrixXd omega = symplectic_form(sigma.n_modes()).mat;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(omega * sigma.mat(), false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");

    // eigenvalues of Omega sigma come in +-(i nu) pairs; moduli pair up
    std::vector<double> mags(2 * sigma.n_modes());
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        mags[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
    std::sort(mags.begin(), mags.end(), std::greater<>());
    std::vector<double> out(sigma.n_modes());
    for (int k = 0; k < sigma.n_modes(); ++k)
        out[static_cast<std::size_t>(k)] = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
    return out;
}

std::vector<double> symplectic_eigenvalues_closed(const CovMatrix& sigma) {
    const Eigen::MatrixXd& m = sigma.mat();
    if (sigma.n_modes() == 1) {
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (det <= 0.0)
            throw std::invalid_argument("symplectic_eigenvalues_closed: non-positive determinant");
        return {std::sqrt(det)};
    }
    if (sigma.n_modes() == 2) {
        const Eigen::Matrix2d a = m.block<2, 2>(0, 0);
        const Eigen::Matrix2d b = m.block<2, 2>(2, 2);
        const Eigen::Matrix2d c = m.block<2, 2>(0, 2);
        const double invariant = a.determinant() + b.determinant() + 2.0 * c.determinant();
        const double det = m.determinant();
        const double disc = std::max(0.0, invariant * invariant - 4.0 * det);
        const double hi = 0.5 * (invariant + std::sqrt(disc));
        const double lo = 0.5 * (invariant - std::sqrt(disc));
        if (hi <= 0.0 || lo <= 0.0)
            throw std::invalid_argument("symplectic_eigenvalues_closed: invalid invariants");
        return {std::sqrt(hi), std::sqrt(lo)};
    }
    throw std::invalid_argument("symplectic_eigenvalues_closed: supports 1 or 2 modes only");
}

bool is_bona_fide(const CovMatrix& sigma, double tol) {
    try {
        const std::vector<double> nu = symplectic_eigenvalues(sigma);
        return nu.back() >= 1.0 - tol;
    } catch (const std::exception&) {
        return false;
    }
}

double renyi2_entropy(const CovMatrix& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma.mat());
    if (llt.info() == Eigen::Success) {
        double log_det = 0.0;
        const auto& l = llt.matrixLLT();
        for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += std::log(l(i, i));
        return log_det;  // (1/2) ln det = sum ln diag(L)
    }
    const double det = sigma.mat().determinant();
    if (det <= 0.0) throw std::invalid_argument("renyi2_entropy: determinant <= 0");
    return 0.5 * std::log(det);
}

Eigen::MatrixXd schur_complement(const CovMatrix& sigma, const std::vector<int>& steered) {
    check_modes(steered, sigma.n_modes(), "schur_complement");
    if (static_cast<int>(steered.size()) == sigma.n_modes())
        throw std::invalid_argument("schur_complement: steering party must be non-empty");

    std::vector<bool> is_steered(sigma.n_modes(), false);
    for (int m : steered) is_steered[static_cast<std::size_t>(m)] = true;
    std::vector<int> party;
    for (int m = 0; m < sigma.n_modes(); ++m)
        if (!is_steered[static_cast<std::size_t>(m)]) party.push_back(m);

    const std::vector<int> ia = quad_indices(party);
    const std::vector<int> ib = quad_indices(steered);
    const Eigen::MatrixXd a = select(sigma.mat(), ia, ia);
    const Eigen::MatrixXd b = select(sigma.mat(), ib, ib);
    const Eigen::MatrixXd c = select(sigma.mat(), ia, ib);

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible())
        throw std::invalid_argument("schur_complement: singular steering-party block");

    Eigen::MatrixXd out = schur_compensated(a, b, c);
    return 0.5 * (out + out.transpose());
}

} // namespace steersat::gaussian
