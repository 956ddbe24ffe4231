#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "steersat/gaussian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace steersat;
using gaussian::CovMatrix;

namespace {

// Random symplectic via the Lie algebra: exp(Omega H) with H symmetric.
Eigen::MatrixXd random_symplectic(int n_modes, std::mt19937& rng, double scale = 0.3) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Eigen::MatrixXd h(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < 2 * n_modes; ++i)
        for (int j = i; j < 2 * n_modes; ++j) h(i, j) = h(j, i) = dist(rng);
    const Eigen::MatrixXd omega = gaussian::symplectic_form(n_modes).mat;
    return (omega * h).exp();
}

// Williamson construction: S diag(nu_k I2) S^T with nu_k >= 1.
CovMatrix random_bona_fide_cm(int n_modes, std::mt19937& rng) {
    std::uniform_real_distribution<double> nu_dist(1.0, 3.0);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        const double nu = nu_dist(rng);
        d(2 * k, 2 * k) = nu;
        d(2 * k + 1, 2 * k + 1) = nu;
    }
    const Eigen::MatrixXd s = random_symplectic(n_modes, rng);
    return CovMatrix::from_matrix(s * d * s.transpose());
}

} // namespace

TEST_CASE("symplectic form blocks and algebra") {
    const auto j1 = gaussian::symplectic_form(1);
    CHECK(j1.mat(0, 1) == 1.0);
    CHECK(j1.mat(1, 0) == -1.0);
    CHECK(j1.mat(0, 0) == 0.0);
    CHECK(j1.mat(1, 1) == 0.0);

    const auto j2 = gaussian::symplectic_form(2);
    CHECK(j2.mat.block<2, 2>(0, 0) == j1.mat);
    CHECK(j2.mat.block<2, 2>(2, 2) == j1.mat);
    CHECK(j2.mat.block<2, 2>(0, 2).isZero(0.0));

    for (int n : {1, 2, 3, 4}) {
        const auto j = gaussian::symplectic_form(n).mat;
        CHECK(((j + j.transpose()).cwiseAbs().maxCoeff()) == 0.0);
        CHECK((j * j + Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(gaussian::symplectic_form(0), std::invalid_argument);
}

TEST_CASE("two-mode squeezed covariance matrix") {
    const CovMatrix vac = gaussian::two_mode_squeezed_cm(0.0);
    CHECK((vac.mat() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const CovMatrix cm = gaussian::two_mode_squeezed_cm(1.0);
    // cosh 2 and sinh 2 frozen from long-double evaluation
    CHECK(cm.mat()(0, 0) == doctest::Approx(3.7621956910836314).epsilon(1e-15));
    CHECK(cm.mat()(3, 3) == doctest::Approx(3.7621956910836314).epsilon(1e-15));
    CHECK(cm.mat()(0, 2) == doctest::Approx(3.6268604078470188).epsilon(1e-15));
    CHECK(cm.mat()(1, 3) == doctest::Approx(-3.6268604078470188).epsilon(1e-15));
    CHECK(cm.mat()(0, 1) == 0.0);

    for (double s : {0.0, 0.3, 1.0, 2.2, 3.0}) {
        const CovMatrix c = gaussian::two_mode_squeezed_cm(s);
        CHECK(c.mat().determinant() == doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(gaussian::two_mode_squeezed_cm(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(gaussian::two_mode_squeezed_cm(std::nan("")), std::invalid_argument);
}

TEST_CASE("initial four-mode state is TMSS plus vacuum") {
    const CovMatrix id = gaussian::initial_four_mode_cm(0.0);
    CHECK((id.mat() - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);

    const CovMatrix cm = gaussian::initial_four_mode_cm(1.0);
    CHECK((cm.mat().topLeftCorner(4, 4) - gaussian::two_mode_squeezed_cm(1.0).mat())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((cm.mat().bottomRightCorner(4, 4) - Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((cm.mat().topRightCorner(4, 4)).isZero(0.0));

    for (double s : {0.0, 0.7, 1.9, 3.0})
        CHECK(gaussian::is_bona_fide(gaussian::initial_four_mode_cm(s), 1e-9));
}

TEST_CASE("lossy Bogoliubov transform structure and symplecticity") {
    const auto s1 = gaussian::lossy_bogoliubov(1.0);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(8, 8);
    expected(4, 4) = expected(5, 5) = -1.0;  // b1_perp negated
    expected(6, 6) = expected(7, 7) = -1.0;  // b2_perp at theta = 1
    CHECK((s1.mat() - expected).cwiseAbs().maxCoeff() == 0.0);

    const auto s0 = gaussian::lossy_bogoliubov(0.0);
    CHECK(s0.mat().block<2, 2>(2, 6) == Eigen::Matrix2d::Identity());
    CHECK(s0.mat().block<2, 2>(6, 2) == Eigen::Matrix2d::Identity());
    CHECK(s0.mat().block<2, 2>(2, 2).isZero(0.0));

    const Eigen::MatrixXd omega = gaussian::symplectic_form(4).mat;
    for (int i = 0; i <= 100; ++i) {
        const double theta = i / 100.0;
        const auto s = gaussian::lossy_bogoliubov(theta);
        const Eigen::MatrixXd residual = s.mat() * omega * s.mat().transpose() - omega;
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(gaussian::lossy_bogoliubov(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(gaussian::lossy_bogoliubov(1.01), std::invalid_argument);
}

TEST_CASE("apply_symplectic basics") {
    const CovMatrix cm = gaussian::initial_four_mode_cm(0.8);
    const auto identity = gaussian::SymplecticTransform::from_matrix(
        Eigen::MatrixXd::Identity(8, 8));
    CHECK((gaussian::apply_symplectic(identity, cm).mat() - cm.mat()).cwiseAbs().maxCoeff() ==
          0.0);

    // theta = 1 channel is lossless: same state up to sign conjugation of the
    // orthogonal modes, so the (b1, b2) block is untouched
    const CovMatrix out = gaussian::apply_symplectic(gaussian::lossy_bogoliubov(1.0), cm);
    CHECK((out.mat().topLeftCorner(4, 4) - cm.mat().topLeftCorner(4, 4)).cwiseAbs().maxCoeff() <=
          1e-14);

    const auto small = gaussian::SymplecticTransform::from_matrix(Eigen::MatrixXd::Identity(4, 4));
    CHECK_THROWS_AS(gaussian::apply_symplectic(small, cm), std::invalid_argument);
}

TEST_CASE("physicality preserved through the transform") {
    for (double s : {0.0, 1.0, 2.0, 3.0})
        for (int i = 0; i <= 10; ++i) {
            const double theta = i / 10.0;
            const CovMatrix out = gaussian::apply_symplectic(gaussian::lossy_bogoliubov(theta),
                                                             gaussian::initial_four_mode_cm(s));
            CHECK(gaussian::is_bona_fide(out, 1e-9));
        }
}

TEST_CASE("partial trace") {
    const CovMatrix cm = gaussian::initial_four_mode_cm(1.2);
    const CovMatrix all = gaussian::partial_trace(cm, {0, 1, 2, 3});
    CHECK((all.mat() - cm.mat()).cwiseAbs().maxCoeff() == 0.0);

    const CovMatrix pair = gaussian::partial_trace(cm, {0, 1});
    CHECK((pair.mat() - gaussian::two_mode_squeezed_cm(1.2).mat()).cwiseAbs().maxCoeff() == 0.0);

    const CovMatrix single = gaussian::partial_trace(cm, {0});
    CHECK((single.mat() - std::cosh(2.4) * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <=
          1e-15);

    CHECK_THROWS_AS(gaussian::partial_trace(cm, {}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian::partial_trace(cm, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(gaussian::partial_trace(cm, {4}), std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues via spectrum and closed form") {
    for (int n : {1, 2}) {
        const CovMatrix id = CovMatrix::from_matrix(Eigen::MatrixXd::Identity(2 * n, 2 * n));
        for (double nu : gaussian::symplectic_eigenvalues(id))
            CHECK(nu == doctest::Approx(1.0).epsilon(1e-12));
    }

    const auto pure = gaussian::symplectic_eigenvalues(gaussian::two_mode_squeezed_cm(1.5));
    REQUIRE(pure.size() == 2);
    CHECK(pure[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(pure[1] == doctest::Approx(1.0).epsilon(1e-10));

    const CovMatrix thermal =
        CovMatrix::from_matrix(std::cosh(2.0) * Eigen::Matrix2d::Identity());
    const auto nu_thermal = gaussian::symplectic_eigenvalues(thermal);
    REQUIRE(nu_thermal.size() == 1);
    CHECK(nu_thermal[0] == doctest::Approx(std::cosh(2.0)).epsilon(1e-13));

    // the spectral route and the closed-form invariants agree on random states
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const CovMatrix cm = random_bona_fide_cm(2, rng);
        const auto spectral = gaussian::symplectic_eigenvalues(cm);
        const auto closed = gaussian::symplectic_eigenvalues_closed(cm);
        REQUIRE(spectral.size() == closed.size());
        for (std::size_t i = 0; i < spectral.size(); ++i)
            CHECK(spectral[i] == doctest::Approx(closed[i]).epsilon(1e-10));
    }

    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(gaussian::symplectic_eigenvalues(CovMatrix::from_matrix(indefinite)),
                    std::invalid_argument);
}

TEST_CASE("pure Gaussian states have unit symplectic spectrum") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::MatrixXd s = random_symplectic(2, rng, 0.5);
        const CovMatrix pure = CovMatrix::from_matrix(s * s.transpose());
        for (double nu : gaussian::symplectic_eigenvalues(pure))
            CHECK(nu == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("is_bona_fide") {
    const CovMatrix id = CovMatrix::from_matrix(Eigen::MatrixXd::Identity(2, 2));
    CHECK(gaussian::is_bona_fide(id, 1e-9));
    const CovMatrix sub = CovMatrix::from_matrix(0.5 * Eigen::Matrix2d::Identity());
    CHECK_FALSE(gaussian::is_bona_fide(sub, 1e-9));
    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 0.0, 0.0, -1.0;
    CHECK_FALSE(gaussian::is_bona_fide(CovMatrix::from_matrix(indefinite), 1e-9));
}

TEST_CASE("Renyi-2 entropy") {
    CHECK(gaussian::renyi2_entropy(gaussian::two_mode_squeezed_cm(1.7)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(gaussian::renyi2_entropy(
              CovMatrix::from_matrix(Eigen::MatrixXd::Identity(4, 4))) == 0.0);

    // thermal single mode at s = 1: (1/2) ln cosh^2 2
    const CovMatrix thermal =
        CovMatrix::from_matrix(std::cosh(2.0) * Eigen::Matrix2d::Identity());
    CHECK(gaussian::renyi2_entropy(thermal) ==
          doctest::Approx(1.3250027473578644).epsilon(1e-14));

    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 0.0, 0.0, -1.0;
    CHECK_THROWS_AS(gaussian::renyi2_entropy(CovMatrix::from_matrix(indefinite)),
                    std::invalid_argument);
}

TEST_CASE("Renyi-2 entropy is a symplectic invariant") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const CovMatrix cm = random_bona_fide_cm(2, rng);
        const auto s = gaussian::SymplecticTransform::from_matrix(random_symplectic(2, rng));
        const double before = gaussian::renyi2_entropy(cm);
        const double after = gaussian::renyi2_entropy(gaussian::apply_symplectic(s, cm));
        CHECK(after == doctest::Approx(before).epsilon(1e-10));
    }
}

TEST_CASE("Schur complement") {
    // block-diagonal input returns the steered block unchanged
    Eigen::MatrixXd block = Eigen::MatrixXd::Identity(4, 4);
    block(0, 0) = block(1, 1) = 2.0;
    block(2, 2) = block(3, 3) = 3.0;
    const Eigen::MatrixXd schur =
        gaussian::schur_complement(CovMatrix::from_matrix(block), {1});
    CHECK((schur - 3.0 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= 1e-14);

    // pure TMSS, steered b2: det = 1 / cosh^2(2s)
    const double s = 1.3;
    const Eigen::MatrixXd m =
        gaussian::schur_complement(gaussian::two_mode_squeezed_cm(s), {1});
    CHECK(m.determinant() ==
          doctest::Approx(1.0 / std::pow(std::cosh(2.0 * s), 2)).epsilon(1e-12));

    // det sigma = det A * det Schur for random bona fide states
    std::mt19937 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const CovMatrix cm = random_bona_fide_cm(2, rng);
        const Eigen::MatrixXd sc = gaussian::schur_complement(cm, {1});
        const double det_a = cm.mat().topLeftCorner(2, 2).determinant();
        const double det_sigma = cm.mat().determinant();
        CHECK(det_a * sc.determinant() == doctest::Approx(det_sigma).epsilon(1e-10));
    }

    // singular steering-party block
    Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(4, 4);
    singular(2, 2) = singular(3, 3) = 1.0;
    CHECK_THROWS_AS(gaussian::schur_complement(CovMatrix::from_matrix(singular), {1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gaussian::schur_complement(gaussian::two_mode_squeezed_cm(1.0), {0, 1}),
                    std::invalid_argument);
}

TEST_CASE("CovMatrix construction rejects bad input") {
    Eigen::MatrixXd odd = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(CovMatrix::from_matrix(odd), std::invalid_argument);

    Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(CovMatrix::from_matrix(asym), std::invalid_argument);

    Eigen::MatrixXd infinite = Eigen::MatrixXd::Identity(2, 2);
    infinite(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(CovMatrix::from_matrix(infinite), std::invalid_argument);
}

TEST_CASE("SymplecticTransform validates the defining identity") {
    CHECK_THROWS_AS(gaussian::SymplecticTransform::from_matrix(2.0 *
                                                               Eigen::MatrixXd::Identity(4, 4)),
                    std::invalid_argument);
}
