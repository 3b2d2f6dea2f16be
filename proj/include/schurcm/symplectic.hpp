#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "schurcm/linalg.hpp"
#include "schurcm/partition.hpp"
#include "schurcm/rng.hpp"

namespace schurcm {

inline constexpr double kTolBona = 1e-9;
inline constexpr double kTolPure = 1e-7;

// Symplectic form on n modes in interleaved ordering: direct sum of
// [[0, 1], [-1, 0]] blocks. omega(n)^2 = -identity.
inline Matrix omega(int n_modes) {
    if (n_modes < 1) throw DimensionMismatchError("omega: need at least one mode");
    Matrix w = Matrix::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        w(2 * k, 2 * k + 1) = 1.0;
        w(2 * k + 1, 2 * k) = -1.0;
    }
    return w;
}

// Real symmetric 2n x 2n second-moment matrix with a named mode partition.
// Construction validates symmetry (then symmetrizes), finiteness, dimension
// agreement and positive semidefiniteness.
class CovarianceMatrix {
public:
    CovarianceMatrix(Matrix m, ModePartition partition) : partition_(std::move(partition)) {
        if (m.rows() != partition_.dim() || m.cols() != partition_.dim())
            throw DimensionMismatchError(
                "covariance matrix is " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + " but the partition needs dimension " +
                std::to_string(partition_.dim()));
        require_symmetric(m);
        matrix_ = symmetrized(m);
        SymEig eig = sym_eig(matrix_);
        detail::require_psd_values(eig.values);
        min_eig_ = eig.values(0);
    }

    const Matrix& matrix() const { return matrix_; }
    const ModePartition& partition() const { return partition_; }
    Index dim() const { return matrix_.rows(); }
    int n_modes() const { return partition_.n_modes(); }
    double min_eig() const { return min_eig_; }

private:
    Matrix matrix_;
    ModePartition partition_;
    double min_eig_ = 0.0;
};

inline ModePartition single_party(int n_modes, const std::string& label = "A") {
    return ModePartition({Party{label, n_modes}});
}

namespace detail {

// V^{1/2} Omega V^{1/2}, the skew-symmetric core of every symplectic-spectrum
// computation. Throws NotPd when V is singular.
inline Matrix skew_core(const Matrix& v) {
    SymEig eig = sym_eig(v);
    require_pd_values(eig.values);
    const Matrix r = apply_spectral(eig, eig.values.cwiseSqrt());
    const int n = static_cast<int>(v.rows() / 2);
    Matrix w = r * omega(n) * r;
    return 0.5 * (w - w.transpose().eval());
}

}  // namespace detail

// Symplectic eigenvalues of a positive definite CM: the n doubled singular
// values of V^{1/2} Omega V^{1/2}, ascending.
inline Vector symplectic_spectrum(const CovarianceMatrix& v) {
    const Matrix w = detail::skew_core(v.matrix());
    Eigen::JacobiSVD<Matrix> svd(w);
    const Vector sv = svd.singularValues();  // descending, each nu twice
    const Index n = sv.size() / 2;
    Vector nus(n);
    for (Index k = 0; k < n; ++k) {
        const Index hi = sv.size() - 1 - 2 * k;
        nus(k) = 0.5 * (sv(hi) + sv(hi - 1));
    }
    return nus;
}

struct WilliamsonResult {
    Matrix S;    // symplectic: S Omega S^T = Omega
    Vector nus;  // ascending, one per mode; S diag(nu_1,nu_1,...) S^T = V
};

namespace detail {

// Orthogonal canonicalization of the skew core W: finds O with
// O^T W O = direct sum of [[0, nu_k], [-nu_k, 0]], nus ascending. Works from
// the symmetric eigenproblem of W^T W, pairing each eigenvector v with its
// partner W v / nu; degenerate clusters are handled by projecting candidates
// against the pairs already fixed.
inline bool canonicalize_skew(const Matrix& w, Matrix& o, Vector& nus) {
    const Index dim = w.rows();
    SymEig eig = sym_eig(symmetrized(w.transpose() * w));
    o = Matrix::Zero(dim, dim);
    nus = Vector::Zero(dim / 2);
    Index col = 0;
    for (Index j = 0; j < dim && col < dim; ++j) {
        Vector v = eig.vectors.col(j);
        for (Index c = 0; c < col; ++c) v -= o.col(c).dot(v) * o.col(c);
        if (v.norm() < 0.5) continue;  // absorbed by an earlier pair of the cluster
        v.normalize();
        const double nu = std::sqrt(std::max(eig.values(j), 0.0));
        if (nu <= kTolPd) return false;
        Vector u = w * v / nu;
        for (Index c = 0; c < col; ++c) u -= o.col(c).dot(u) * o.col(c);
        u -= v.dot(u) * v;
        if (std::abs(u.norm() - 1.0) > 1e-6) return false;
        u.normalize();
        // ordering (u, v) makes the block [[0, +nu], [-nu, 0]]
        o.col(col) = u;
        o.col(col + 1) = v;
        nus(col / 2) = nu;
        col += 2;
    }
    return col == dim;
}

}  // namespace detail

// Williamson decomposition V = S diag(nu_1,nu_1,...,nu_n,nu_n) S^T with S
// symplectic. S is assembled as V^{1/2} O K^{-1/2} from the orthogonal
// canonical form of the skew core; the result is verified against both
// invariants and recomputed under a random orthogonal similarity if the
// first pass degrades (degenerate spectra).
inline WilliamsonResult williamson(const CovarianceMatrix& v) {
    const Matrix& m = v.matrix();
    SymEig eig = sym_eig(m);
    detail::require_pd_values(eig.values);
    const Matrix r = detail::apply_spectral(eig, eig.values.cwiseSqrt());
    const int n = v.n_modes();
    const Matrix om = omega(n);
    Matrix w = r * om * r;
    w = 0.5 * (w - w.transpose().eval());

    const double scale = 1.0 + max_abs(m);
    SeededRng jitter(0xC0FFEEULL, 0);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Matrix o;
        Vector nus;
        bool ok;
        if (attempt == 0) {
            ok = detail::canonicalize_skew(w, o, nus);
        } else {
            // random orthogonal similarity to split degenerate clusters
            Matrix g(2 * n, 2 * n);
            for (Index i = 0; i < g.rows(); ++i)
                for (Index j = 0; j < g.cols(); ++j) g(i, j) = jitter.next_gaussian();
            const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
            Matrix wj = q.transpose() * w * q;
            wj = 0.5 * (wj - wj.transpose().eval());
            ok = detail::canonicalize_skew(wj, o, nus);
            if (ok) o = q * o;
        }
        if (!ok) continue;

        Vector k_inv_sqrt(2 * n);
        Vector k_diag(2 * n);
        for (int i = 0; i < n; ++i) {
            k_diag(2 * i) = k_diag(2 * i + 1) = nus(i);
            k_inv_sqrt(2 * i) = k_inv_sqrt(2 * i + 1) = 1.0 / std::sqrt(nus(i));
        }
        Matrix s = r * o * k_inv_sqrt.asDiagonal();

        const double recon = (s * k_diag.asDiagonal() * s.transpose() - m).cwiseAbs().maxCoeff();
        const double sympl = (s * om * s.transpose() - om).cwiseAbs().maxCoeff();
        if (recon <= kTolRecon * scale && sympl <= kTolRecon * scale)
            return WilliamsonResult{std::move(s), std::move(nus)};
    }
    throw NumericalFailureError("williamson: reconstruction exceeded tolerance after retries");
}

struct BonaFideResult {
    bool ok = false;
    double margin = 0.0;  // nu_min - 1; -1 for PSD-singular input
};

// Uncertainty-principle check V + i Omega >= 0, realized through the real
// symplectic spectrum: bona fide iff nu_min >= 1 - tol. Singular (PSD but not
// PD) inputs are reported as not bona fide with margin -1.
inline BonaFideResult is_bona_fide(const CovarianceMatrix& v) {
    if (v.min_eig() <= kTolPd) return {false, -1.0};
    const Vector nus = symplectic_spectrum(v);
    const double margin = nus(0) - 1.0;
    return {margin >= -kTolBona, margin};
}

// True iff every symplectic eigenvalue is 1 within tolerance, i.e. the CM is
// symplectic (det V = 1, pure Gaussian state).
inline bool is_pure_cm(const CovarianceMatrix& v) {
    const Vector nus = symplectic_spectrum(v);
    return (nus.array() - 1.0).abs().maxCoeff() <= kTolPure;
}

// S = exp(Omega H) with H random symmetric (Gaussian entries, sd = strength).
inline Matrix random_symplectic(int n_modes, double strength, SeededRng& rng) {
    if (strength <= 0.0) throw Error("random_symplectic: strength must be positive");
    const Index d = 2 * static_cast<Index>(n_modes);
    Matrix h(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = i; j < d; ++j) h(i, j) = h(j, i) = strength * rng.next_gaussian();
    const Matrix gen = omega(n_modes) * h;
    return gen.exp();
}

// V = S diag(nu_1,nu_1,...) S^T with nu_i uniform in [nu_lo, nu_hi]. The
// ensemble behind every randomized check; nu_lo >= 1 makes the output a
// quantum CM, nu_lo < 1 produces generic PD matrices.
inline CovarianceMatrix random_cm(const ModePartition& partition, double nu_lo, double nu_hi,
                                  double strength, SeededRng& rng) {
    if (nu_hi < nu_lo) throw Error("random_cm: nu_hi < nu_lo");
    const int n = partition.n_modes();
    Vector k(2 * n);
    for (int i = 0; i < n; ++i) {
        const double nu = rng.uniform(nu_lo, nu_hi);
        k(2 * i) = k(2 * i + 1) = nu;
    }
    const Matrix s = random_symplectic(n, strength, rng);
    return CovarianceMatrix(symmetrized(s * k.asDiagonal() * s.transpose()), partition);
}

inline CovarianceMatrix random_quantum_cm(const ModePartition& partition, double nu_max,
                                          double strength, SeededRng& rng) {
    if (nu_max < 1.0) throw Error("random_quantum_cm: nu_max must be >= 1");
    return random_cm(partition, 1.0, nu_max, strength, rng);
}

// Pure-state extension: appends an ancilla party "PURIF" with one mode per
// original mode, built from two-mode-squeezed blocks
// [[nu I, sqrt(nu^2-1) Z], [sqrt(nu^2-1) Z, nu I]] in the Williamson basis and
// pushed back through S + identity. The marginal on the original parties
// reproduces V.
inline CovarianceMatrix purify(const CovarianceMatrix& v) {
    const BonaFideResult bf = is_bona_fide(v);
    if (!bf.ok)
        throw NotBonaFideError("purify: input is not a quantum CM (margin " +
                               std::to_string(bf.margin) + ")");
    if (v.partition().has_party("PURIF"))
        throw LabelClashError("purify: partition already has a party named PURIF");

    const WilliamsonResult wr = williamson(v);
    const int n = v.n_modes();
    const Index d = 2 * static_cast<Index>(n);
    Matrix g = Matrix::Zero(2 * d, 2 * d);
    for (int i = 0; i < n; ++i) {
        const double nu = wr.nus(i);
        const double c = std::sqrt(std::max(nu * nu - 1.0, 0.0));
        g(2 * i, 2 * i) = g(2 * i + 1, 2 * i + 1) = nu;
        g(d + 2 * i, d + 2 * i) = g(d + 2 * i + 1, d + 2 * i + 1) = nu;
        g(2 * i, d + 2 * i) = g(d + 2 * i, 2 * i) = c;
        g(2 * i + 1, d + 2 * i + 1) = g(d + 2 * i + 1, 2 * i + 1) = -c;
    }
    Matrix ext = Matrix::Zero(2 * d, 2 * d);
    ext.topLeftCorner(d, d) = wr.S;
    ext.bottomRightCorner(d, d) = Matrix::Identity(d, d);
    const Matrix pure = symmetrized(ext * g * ext.transpose());

    std::vector<Party> parties = v.partition().parties();
    parties.push_back(Party{"PURIF", n});
    return CovarianceMatrix(pure, ModePartition(parties));
}

}  // namespace schurcm
