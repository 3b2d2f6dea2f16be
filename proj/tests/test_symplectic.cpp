#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include "test_helpers.hpp"

using namespace schurcm;
using schurcm::testing::thermal;
using schurcm::testing::tmsv;

namespace {

// Independent spectrum oracle for tests: |imaginary parts| of the eigenvalues
// of Omega V, deduplicated by pairing. Complex arithmetic is fine here; the
// library itself stays real.
Vector spectrum_via_complex_eigs(const CovarianceMatrix& v) {
    const Matrix m = omega(v.n_modes()) * v.matrix();
    Eigen::EigenSolver<Matrix> es(m);
    std::vector<double> mags;
    for (Index i = 0; i < m.rows(); ++i) mags.push_back(std::abs(es.eigenvalues()(i).imag()));
    std::sort(mags.begin(), mags.end());
    Vector out(m.rows() / 2);
    for (Index k = 0; k < out.size(); ++k)
        out(k) = 0.5 * (mags[static_cast<std::size_t>(2 * k)] +
                        mags[static_cast<std::size_t>(2 * k + 1)]);
    return out;
}

}  // namespace

TEST_CASE("omega") {
    const Matrix o1 = omega(1);
    REQUIRE(o1(0, 1) == 1.0);
    REQUIRE(o1(1, 0) == -1.0);
    REQUIRE(o1(0, 0) == 0.0);

    const Matrix o2 = omega(2);
    REQUIRE(o2.topLeftCorner(2, 2) == o1);
    REQUIRE(o2.bottomRightCorner(2, 2) == o1);
    REQUIRE(o2.topRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);

    for (int n : {1, 2, 5}) {
        const Matrix o = omega(n);
        REQUIRE((o * o + Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() == 0.0);
        REQUIRE((o + o.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("CovarianceMatrix validation") {
    REQUIRE_THROWS_AS(CovarianceMatrix(Matrix::Identity(4, 4), single_party(1)),
                      DimensionMismatchError);
    Matrix asym = Matrix::Identity(2, 2);
    asym(0, 1) = 0.5;
    REQUIRE_THROWS_AS(CovarianceMatrix(asym, single_party(1)), NotSymmetricError);
    REQUIRE_THROWS_AS(CovarianceMatrix(-Matrix::Identity(2, 2), single_party(1)), NotPsdError);
}

TEST_CASE("symplectic_spectrum") {
    SECTION("identity CM") {
        const Vector nus = symplectic_spectrum(
            CovarianceMatrix(Matrix::Identity(6, 6), single_party(3)));
        for (Index i = 0; i < nus.size(); ++i) REQUIRE(nus(i) == Catch::Approx(1.0));
    }
    SECTION("one mode: nu = sqrt(det)") {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = 2.0;
        d(1, 1) = 8.0;
        const Vector nus = symplectic_spectrum(CovarianceMatrix(d, single_party(1)));
        REQUIRE(nus(0) == Catch::Approx(4.0));
    }
    SECTION("one-mode formula on random PD") {
        SeededRng rng(21);
        for (int t = 0; t < 100; ++t) {
            const CovarianceMatrix v = random_cm(single_party(1), 0.3, 3.0, 0.7, rng);
            REQUIRE(symplectic_spectrum(v)(0) ==
                    Catch::Approx(std::sqrt(v.matrix().determinant())).epsilon(1e-9));
        }
    }
    SECTION("counterexample minimum") {
        const Vector nus = symplectic_spectrum(counterexample_cm());
        REQUIRE(nus(0) == Catch::Approx(1.01359).margin(1e-4));
    }
    SECTION("symplectic invariance") {
        SeededRng rng(22);
        for (int t = 0; t < 100; ++t) {
            const ModePartition p = single_party(2);
            const CovarianceMatrix v = random_cm(p, 0.5, 3.0, 0.7, rng);
            const Matrix s = random_symplectic(2, 0.7, rng);
            const CovarianceMatrix moved(symmetrized(s * v.matrix() * s.transpose()), p);
            const Vector a = symplectic_spectrum(v);
            const Vector b = symplectic_spectrum(moved);
            REQUIRE((a - b).cwiseAbs().maxCoeff() <= 1e-7 * (1.0 + a.cwiseAbs().maxCoeff()));
        }
    }
    SECTION("agrees with the complex-eigenvalue oracle") {
        SeededRng rng(23);
        for (int t = 0; t < 50; ++t) {
            const CovarianceMatrix v = random_cm(single_party(3), 0.4, 3.0, 0.7, rng);
            const Vector a = symplectic_spectrum(v);
            const Vector b = spectrum_via_complex_eigs(v);
            REQUIRE((a - b).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + a.cwiseAbs().maxCoeff()));
        }
    }
    SECTION("rejects singular input") {
        Matrix z = Matrix::Zero(2, 2);
        z(0, 0) = 1.0;
        REQUIRE_THROWS_AS(symplectic_spectrum(CovarianceMatrix(z, single_party(1))), NotPdError);
    }
}

TEST_CASE("williamson") {
    SECTION("identity") {
        const WilliamsonResult wr =
            williamson(CovarianceMatrix(Matrix::Identity(4, 4), single_party(2)));
        REQUIRE((wr.S - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE(wr.nus(0) == Catch::Approx(1.0));
    }
    SECTION("thermal single mode") {
        const WilliamsonResult wr = williamson(thermal(3.0));
        REQUIRE(wr.nus(0) == Catch::Approx(3.0));
        REQUIRE((wr.S - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
    }
    SECTION("TMSV is pure: unit symplectic spectrum") {
        const double r = 0.5 * std::acosh(1.25);
        const WilliamsonResult wr = williamson(tmsv(r));
        REQUIRE(wr.nus(0) == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(wr.nus(1) == Catch::Approx(1.0).margin(1e-9));
        const Vector oracle = spectrum_via_complex_eigs(tmsv(r));
        REQUIRE(oracle(0) == Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("round trip on random PD, dims 2 to 12") {
        SeededRng rng(24);
        for (int t = 0; t < 100; ++t) {
            const int n = 1 + static_cast<int>(rng.next_below(6));
            const CovarianceMatrix v = random_cm(single_party(n), 0.3, 3.0, 0.7, rng);
            const WilliamsonResult wr = williamson(v);
            const Matrix om = omega(n);
            const double scale = 1.0 + max_abs(v.matrix());
            REQUIRE((wr.S * om * wr.S.transpose() - om).cwiseAbs().maxCoeff() <= 1e-8 * scale);
            Vector k(2 * n);
            for (int i = 0; i < n; ++i) k(2 * i) = k(2 * i + 1) = wr.nus(i);
            REQUIRE((wr.S * k.asDiagonal() * wr.S.transpose() - v.matrix()).cwiseAbs().maxCoeff() <=
                    1e-8 * scale);
            REQUIRE((wr.nus - symplectic_spectrum(v)).cwiseAbs().maxCoeff() <= 1e-8 * scale);
        }
    }
    SECTION("degenerate spectra") {
        // two modes at the same nu
        const ModePartition p = single_party(2);
        SeededRng rng(25);
        const Matrix s = random_symplectic(2, 0.8, rng);
        Vector k(4);
        k << 2.0, 2.0, 2.0, 2.0;
        const CovarianceMatrix v(symmetrized(s * k.asDiagonal() * s.transpose()), p);
        const WilliamsonResult wr = williamson(v);
        REQUIRE(wr.nus(0) == Catch::Approx(2.0).margin(1e-8));
        REQUIRE(wr.nus(1) == Catch::Approx(2.0).margin(1e-8));
        const Matrix om = omega(2);
        REQUIRE((wr.S * om * wr.S.transpose() - om).cwiseAbs().maxCoeff() < 1e-7);
    }
}

TEST_CASE("is_bona_fide") {
    REQUIRE(is_bona_fide(CovarianceMatrix(Matrix::Identity(2, 2), single_party(1))).ok);
    REQUIRE(is_bona_fide(CovarianceMatrix(Matrix::Identity(2, 2), single_party(1))).margin ==
            Catch::Approx(0.0).margin(1e-12));

    const BonaFideResult squeezed_too_much = is_bona_fide(thermal(0.5));
    REQUIRE_FALSE(squeezed_too_much.ok);
    REQUIRE(squeezed_too_much.margin == Catch::Approx(-0.5));

    const BonaFideResult ce = is_bona_fide(counterexample_cm());
    REQUIRE(ce.ok);
    REQUIRE(ce.margin == Catch::Approx(0.01359).margin(1e-4));

    SECTION("PSD-singular input reports margin -1") {
        Matrix z = Matrix::Zero(2, 2);
        z(0, 0) = 1.0;
        const BonaFideResult r = is_bona_fide(CovarianceMatrix(z, single_party(1)));
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.margin == -1.0);
    }
}

TEST_CASE("is_pure_cm") {
    REQUIRE(is_pure_cm(CovarianceMatrix(Matrix::Identity(4, 4), single_party(2))));
    REQUIRE_FALSE(is_pure_cm(thermal(2.0)));
    for (double r : {0.1, 0.5, 1.3}) REQUIRE(is_pure_cm(tmsv(r)));
}

TEST_CASE("random_symplectic") {
    SECTION("strength to zero approaches identity") {
        SeededRng rng(26);
        const Matrix s = random_symplectic(2, 1e-9, rng);
        REQUIRE((s - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
    }
    SECTION("defining property and determinant") {
        SeededRng rng(27);
        for (int t = 0; t < 50; ++t) {
            const int n = 1 + static_cast<int>(rng.next_below(3));
            const Matrix s = random_symplectic(n, 0.7, rng);
            const Matrix om = omega(n);
            REQUIRE((s * om * s.transpose() - om).cwiseAbs().maxCoeff() <= 1e-8);
            REQUIRE(s.determinant() == Catch::Approx(1.0).margin(1e-8));
        }
    }
}

TEST_CASE("random_quantum_cm") {
    SECTION("pure, zero-strength limit is the identity") {
        SeededRng rng(28);
        const CovarianceMatrix v = random_quantum_cm(single_party(2), 1.0, 1e-9, rng);
        REQUIRE((v.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
    }
    SECTION("always bona fide") {
        SeededRng rng(29);
        for (int t = 0; t < 50; ++t) {
            const ModePartition p({Party{"A", 1}, Party{"B", 2}});
            REQUIRE(is_bona_fide(random_quantum_cm(p, 3.0, 0.7, rng)).ok);
        }
    }
    SECTION("same seed, same matrix") {
        SeededRng a(30, 5), b(30, 5);
        const CovarianceMatrix va = random_quantum_cm(single_party(2), 2.0, 0.7, a);
        const CovarianceMatrix vb = random_quantum_cm(single_party(2), 2.0, 0.7, b);
        REQUIRE((va.matrix() - vb.matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("purify") {
    SECTION("pure input gains a vacuum ancilla") {
        const double r = 0.4;
        const CovarianceMatrix p = purify(tmsv(r));
        REQUIRE(p.partition().has_party("PURIF"));
        REQUIRE(is_pure_cm(p));
        const Matrix anc = p.matrix().bottomRightCorner(4, 4);
        REQUIRE((anc - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-7);
        REQUIRE((p.matrix().topLeftCorner(4, 4) - tmsv(r).matrix()).cwiseAbs().maxCoeff() < 1e-7);
    }
    SECTION("thermal mode purifies to TMSV form") {
        const CovarianceMatrix p = purify(thermal(3.0));
        REQUIRE(p.dim() == 4);
        REQUIRE(is_pure_cm(p));
        REQUIRE((p.matrix().topLeftCorner(2, 2) - 3.0 * Matrix::Identity(2, 2))
                    .cwiseAbs()
                    .maxCoeff() < 1e-8);
    }
    SECTION("random mixed input: pure output, marginal reconstructs") {
        SeededRng rng(7);
        const ModePartition p({Party{"A", 1}, Party{"B", 2}});
        const CovarianceMatrix v = random_quantum_cm(p, 3.0, 0.7, rng);
        const CovarianceMatrix pure = purify(v);
        REQUIRE(is_pure_cm(pure));
        const CovarianceMatrix marginal = partial_trace(pure, PartySelector{"A", "B"});
        REQUIRE((marginal.matrix() - v.matrix()).cwiseAbs().maxCoeff() <=
                1e-8 * (1.0 + max_abs(v.matrix())));
    }
    SECTION("rejects non-quantum input") {
        REQUIRE_THROWS_AS(purify(thermal(0.5)), NotBonaFideError);
    }
}
