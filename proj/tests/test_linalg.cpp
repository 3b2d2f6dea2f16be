#include <catch2/catch_amalgamated.hpp>

#include "schurcm/linalg.hpp"
#include "schurcm/rng.hpp"

using namespace schurcm;

namespace {

Matrix random_pd(Index d, SeededRng& rng) {
    Matrix g(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) g(i, j) = rng.next_gaussian();
    return Matrix(g * g.transpose() + 0.2 * static_cast<double>(d) * Matrix::Identity(d, d));
}

Matrix m22(double a, double b, double c, double d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

TEST_CASE("sym_eig basics") {
    SECTION("identity") {
        auto [vals, vecs] = sym_eig(Matrix::Identity(4, 4));
        for (Index i = 0; i < 4; ++i) REQUIRE(vals(i) == Catch::Approx(1.0));
        REQUIRE((vecs * vecs.transpose() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("diagonal is sorted ascending") {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 3.0;
        m(1, 1) = 1.0;
        auto [vals, vecs] = sym_eig(m);
        REQUIRE(vals(0) == Catch::Approx(1.0));
        REQUIRE(vals(1) == Catch::Approx(3.0));
    }
    SECTION("2x2 hand computation") {
        auto [vals, vecs] = sym_eig(m22(2, 1, 1, 2));
        REQUIRE(vals(0) == Catch::Approx(1.0));
        REQUIRE(vals(1) == Catch::Approx(3.0));
    }
    SECTION("reconstruction on random matrices") {
        SeededRng rng(7);
        for (int t = 0; t < 20; ++t) {
            const Matrix m = symmetrized(random_pd(5, rng) - 2.0 * Matrix::Identity(5, 5));
            auto [vals, q] = sym_eig(m);
            const Matrix recon = q * vals.asDiagonal() * q.transpose();
            REQUIRE((recon - m).cwiseAbs().maxCoeff() <= kTolRecon * (1.0 + max_abs(m)));
        }
    }
    SECTION("rejects asymmetry and non-finite input") {
        REQUIRE_THROWS_AS(sym_eig(m22(1, 2, 0, 1)), NotSymmetricError);
        Matrix bad = m22(1, 0, 0, 1);
        bad(0, 1) = bad(1, 0) = std::nan("");
        REQUIRE_THROWS_AS(sym_eig(bad), NonFiniteError);
    }
}

TEST_CASE("min_eig_sym") {
    REQUIRE(min_eig_sym(Matrix::Identity(2, 2)) == Catch::Approx(1.0));
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 5.0;
    REQUIRE(min_eig_sym(m) == Catch::Approx(-1.0));
    REQUIRE(min_eig_sym(m22(0, 1, 1, 0)) == Catch::Approx(-1.0));
}

TEST_CASE("sqrt_psd") {
    REQUIRE((sqrt_psd(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <
            1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    const Matrix r = sqrt_psd(d);
    REQUIRE(r(0, 0) == Catch::Approx(2.0));
    REQUIRE(r(1, 1) == Catch::Approx(3.0));
    REQUIRE((sqrt_psd(4.0 * Matrix::Identity(6, 6)) - 2.0 * Matrix::Identity(6, 6))
                .cwiseAbs()
                .maxCoeff() < 1e-12);

    SECTION("R*R reconstructs the input") {
        SeededRng rng(3);
        for (int t = 0; t < 20; ++t) {
            const Matrix m = random_pd(6, rng);
            const Matrix r2 = sqrt_psd(m);
            REQUIRE((r2 * r2 - m).cwiseAbs().maxCoeff() <= kTolRecon * (1.0 + max_abs(m)));
        }
    }
    SECTION("rejects indefinite input") {
        Matrix neg = Matrix::Identity(2, 2);
        neg(0, 0) = -1.0;
        REQUIRE_THROWS_AS(sqrt_psd(neg), NotPsdError);
    }
}

TEST_CASE("pinv_psd") {
    SECTION("inverse on the support") {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = 2.0;
        const Matrix p = pinv_psd(d);
        REQUIRE(p(0, 0) == Catch::Approx(0.5));
        REQUIRE(p(1, 1) == Catch::Approx(0.0));
    }
    REQUIRE((pinv_psd(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
            1e-13);
    SECTION("2x2 hand inverse") {
        const Matrix p = pinv_psd(m22(2, 1, 1, 2));
        REQUIRE(p(0, 0) == Catch::Approx(2.0 / 3.0));
        REQUIRE(p(0, 1) == Catch::Approx(-1.0 / 3.0));
    }
    SECTION("Moore-Penrose identities on singular matrices") {
        SeededRng rng(11);
        for (int t = 0; t < 20; ++t) {
            Matrix g(5, 3);
            for (Index i = 0; i < 5; ++i)
                for (Index j = 0; j < 3; ++j) g(i, j) = rng.next_gaussian();
            const Matrix m = symmetrized(g * g.transpose());  // rank 3 of 5
            const Matrix p = pinv_psd(m);
            REQUIRE((m * p * m - m).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + max_abs(m)));
            REQUIRE((p * m * p - p).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + max_abs(p)));
        }
    }
}

TEST_CASE("log_det_psd") {
    REQUIRE(log_det_psd(Matrix::Identity(6, 6)) == Catch::Approx(0.0).margin(1e-14));
    const double e = std::exp(1.0);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = d(1, 1) = e;
    REQUIRE(log_det_psd(d) == Catch::Approx(2.0));
    REQUIRE(log_det_psd(m22(2, 1, 1, 2)) == Catch::Approx(std::log(3.0)));
    REQUIRE_THROWS_AS(log_det_psd(Matrix::Zero(2, 2)), NotPdError);
}

TEST_CASE("schur_complement") {
    SECTION("2x2 hand case") {
        const Matrix s = schur_complement(m22(2, 1, 1, 2), {1});
        REQUIRE(s.rows() == 1);
        REQUIRE(s(0, 0) == Catch::Approx(1.5));
    }
    SECTION("uncorrelated blocks pass through") {
        Matrix m = Matrix::Zero(4, 4);
        m.topLeftCorner(2, 2) = m22(2, 1, 1, 2);
        m.bottomRightCorner(2, 2) = m22(5, 2, 2, 5);
        const Matrix s = schur_complement(m, {2, 3});
        REQUIRE((s - m22(5, 2, 2, 5)).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("determinant factorization, hand case") {
        const Matrix m = m22(4, 2, 2, 5);
        const Matrix s = schur_complement(m, {1});
        REQUIRE(s(0, 0) == Catch::Approx(4.0));
        REQUIRE(m.determinant() == Catch::Approx(4.0 * s(0, 0)));
    }
    SECTION("determinant factorization, random") {
        SeededRng rng(5);
        for (int t = 0; t < 200; ++t) {
            const Index d = 2 + static_cast<Index>(rng.next_below(7));  // dims 2..8
            const Matrix m = random_pd(d, rng);
            const Index keep_from = 1 + static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(d - 1)));
            IndexSet keep;
            for (Index i = keep_from; i < d; ++i) keep.push_back(i);
            IndexSet drop = complement_of(keep, d);
            const Matrix s = schur_complement(m, keep);
            const double det_m = m.determinant();
            const double det_a = submatrix(m, drop, drop).determinant();
            REQUIRE(std::abs(det_m - det_a * s.determinant()) <= 1e-8 * (1.0 + std::abs(det_m)));
        }
    }
    SECTION("quotient property M/A = (M/A1)/(A/A1)") {
        SeededRng rng(6);
        for (int t = 0; t < 100; ++t) {
            const Matrix m = random_pd(6, rng);
            // A = indices {0,1,2,3}: A1 = {0,1} inside A. keep of M/A1 is {2,3,4,5}.
            const Matrix m_a1 = schur_complement(m, {2, 3, 4, 5});
            const Matrix lhs = schur_complement(m, {4, 5});
            const Matrix rhs = schur_complement(m_a1, {2, 3});
            REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + max_abs(m)));
        }
    }
    SECTION("inversion corollary M^{-1} / (M/A)^{-1} = A^{-1}") {
        SeededRng rng(8);
        for (int t = 0; t < 100; ++t) {
            const Matrix m = random_pd(5, rng);
            const IndexSet keep = {3, 4};
            const IndexSet drop = {0, 1, 2};
            const Matrix minv = inv_pd(m);
            // (M/A)^{-1} occupies the `keep` block of M^{-1}; Schur away that block.
            const Matrix lhs = schur_complement(minv, drop);
            const Matrix rhs = inv_pd(submatrix(m, drop, drop));
            REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + max_abs(rhs)));
        }
    }
    SECTION("monotone and concave in M (property v)") {
        SeededRng rng(9);
        for (int t = 0; t < 100; ++t) {
            const Matrix n = random_pd(6, rng);
            Matrix g(6, 6);
            for (Index i = 0; i < 6; ++i)
                for (Index j = 0; j < 6; ++j) g(i, j) = rng.next_gaussian();
            const Matrix m = n + symmetrized(g * g.transpose());  // M >= N
            const IndexSet keep = {0, 1, 2};
            REQUIRE(min_eig_sym(schur_complement(m, keep) - schur_complement(n, keep)) >= -1e-8);
            const double p = rng.uniform(0.1, 0.9);
            const Matrix mix = p * m + (1.0 - p) * n;
            const Matrix concave = schur_complement(mix, keep) -
                                   p * schur_complement(m, keep) -
                                   (1.0 - p) * schur_complement(n, keep);
            REQUIRE(min_eig_sym(concave) >= -1e-8);
        }
    }
    SECTION("keep everything returns the matrix") {
        const Matrix m = m22(2, 1, 1, 2);
        REQUIRE((schur_complement(m, {0, 1}) - m).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("bad index sets") {
        REQUIRE_THROWS_AS(schur_complement(m22(2, 1, 1, 2), {}), BadIndexSetError);
        REQUIRE_THROWS_AS(schur_complement(m22(2, 1, 1, 2), {1, 1}), BadIndexSetError);
        REQUIRE_THROWS_AS(schur_complement(m22(2, 1, 1, 2), {2}), BadIndexSetError);
    }
    SECTION("pseudo-inverse path on singular conditioning block") {
        Matrix m = Matrix::Zero(3, 3);
        m(0, 0) = 2.0;  // second row/col of the dropped block is all zero
        m(2, 2) = 3.0;
        m(0, 2) = m(2, 0) = 1.0;
        const Matrix s = schur_complement(m, {2});
        REQUIRE(s(0, 0) == Catch::Approx(3.0 - 1.0 / 2.0));
    }
}

TEST_CASE("geometric_mean") {
    SECTION("M # M = M") {
        const Matrix m = m22(3, 1, 1, 2);
        REQUIRE((geometric_mean(m, m) - m).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("commuting cases") {
        REQUIRE((geometric_mean(4.0 * Matrix::Identity(3, 3), Matrix::Identity(3, 3)) -
                 2.0 * Matrix::Identity(3, 3))
                    .cwiseAbs()
                    .maxCoeff() < 1e-12);
        Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
        a(0, 0) = 2.0;
        a(1, 1) = 8.0;
        b(0, 0) = 8.0;
        b(1, 1) = 2.0;
        const Matrix g = geometric_mean(a, b);
        REQUIRE((g - 4.0 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("symmetry and congruence covariance") {
        SeededRng rng(12);
        for (int t = 0; t < 50; ++t) {
            const Matrix m = random_pd(4, rng);
            const Matrix n = random_pd(4, rng);
            const Matrix g1 = geometric_mean(m, n);
            const Matrix g2 = geometric_mean(n, m);
            REQUIRE((g1 - g2).cwiseAbs().maxCoeff() <= kTolRecon * (1.0 + max_abs(g1)));
            Matrix l(4, 4);
            for (Index i = 0; i < 4; ++i)
                for (Index j = 0; j < 4; ++j) l(i, j) = rng.next_gaussian();
            const Matrix lhs = geometric_mean(symmetrized(l * m * l.transpose()),
                                              symmetrized(l * n * l.transpose()));
            const Matrix rhs = symmetrized(l * g1 * l.transpose());
            REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + max_abs(rhs)));
        }
    }
    SECTION("maximality: ((M, X), (X, N)) is PSD at X = M # N") {
        SeededRng rng(13);
        for (int t = 0; t < 50; ++t) {
            const Matrix m = random_pd(3, rng);
            const Matrix n = random_pd(3, rng);
            const Matrix x = geometric_mean(m, n);
            Matrix block(6, 6);
            block.topLeftCorner(3, 3) = m;
            block.topRightCorner(3, 3) = x;
            block.bottomLeftCorner(3, 3) = x;
            block.bottomRightCorner(3, 3) = n;
            REQUIRE(min_eig_sym(block) >= -1e-8 * (1.0 + max_abs(block)));
        }
    }
    SECTION("rejects non-PD input") {
        REQUIRE_THROWS_AS(geometric_mean(Matrix::Zero(2, 2), Matrix::Identity(2, 2)), NotPdError);
    }
}
