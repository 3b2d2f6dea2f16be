#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "schurcm/errors.hpp"

namespace schurcm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Ordered, strictly increasing list of row/column indices. Selects the
// principal submatrix a Schur complement keeps.
using IndexSet = std::vector<Index>;

// Tolerance policy, shared across the library. Relative factors scale with
// the magnitude of the input so that checks behave the same for matrices of
// entries ~1 and ~1e3.
inline constexpr double kTolSym = 1e-10;   // asymmetry, times (1 + max|entry|)
inline constexpr double kTolPsd = 1e-9;    // PSD slack, times (1 + lambda_max)
inline constexpr double kTolPd = 1e-12;    // strict positivity floor
inline constexpr double kTolRecon = 1e-8;  // reconstruction residuals
inline constexpr double kRankCut = 1e-10;  // pseudo-inverse cutoff, times lambda_max

inline double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_finite(const Matrix& m) {
    if (!m.allFinite()) throw NonFiniteError("matrix has NaN/Inf entries");
}

inline void require_square(const Matrix& m) {
    if (m.rows() != m.cols())
        throw DimensionMismatchError("matrix is not square: " + std::to_string(m.rows()) +
                                     "x" + std::to_string(m.cols()));
}

inline void require_symmetric(const Matrix& m) {
    require_square(m);
    require_finite(m);
    if (m.size() == 0) return;
    const double tol = kTolSym * (1.0 + max_abs(m));
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol)
        throw NotSymmetricError("asymmetry " + std::to_string(asym) + " exceeds tolerance");
}

inline Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

struct SymEig {
    Vector values;   // ascending
    Matrix vectors;  // orthogonal, columns match values
};

// Eigendecomposition of a symmetric matrix, M = Q diag(values) Q^T.
inline SymEig sym_eig(const Matrix& m) {
    require_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
    if (es.info() != Eigen::Success)
        throw NumericalFailureError("symmetric eigendecomposition did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eig_sym(const Matrix& m) {
    if (m.rows() == 0) throw DimensionMismatchError("empty matrix");
    return sym_eig(m).values(0);
}

namespace detail {

// Largest eigenvalue clamped below at zero; used for relative PSD slack.
inline double top_scale(const Vector& vals) {
    return vals.size() == 0 ? 0.0 : std::max(vals(vals.size() - 1), 0.0);
}

inline void require_psd_values(const Vector& vals) {
    if (vals.size() == 0) return;
    const double tol = kTolPsd * (1.0 + top_scale(vals));
    if (vals(0) < -tol)
        throw NotPsdError("eigenvalue " + std::to_string(vals(0)) + " below -tol_psd");
}

inline void require_pd_values(const Vector& vals) {
    if (vals.size() == 0 || vals(0) <= kTolPd)
        throw NotPdError("matrix is not positive definite (min eigenvalue " +
                         (vals.size() ? std::to_string(vals(0)) : std::string("n/a")) + ")");
}

// Q f(values) Q^T, symmetrized.
inline Matrix apply_spectral(const SymEig& eig, const Vector& transformed) {
    Matrix r = eig.vectors * transformed.asDiagonal() * eig.vectors.transpose();
    return symmetrized(r);
}

}  // namespace detail

// Symmetric PSD square root. Eigenvalues within tolerance below zero are
// clamped to zero.
inline Matrix sqrt_psd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    detail::require_psd_values(eig.values);
    Vector r = eig.values.cwiseMax(0.0).cwiseSqrt();
    return detail::apply_spectral(eig, r);
}

// Moore-Penrose pseudo-inverse of a PSD matrix; inversion happens on the
// support only, eigenvalues below rank_cut * lambda_max count as zero.
inline Matrix pinv_psd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    detail::require_psd_values(eig.values);
    const double cut = kRankCut * detail::top_scale(eig.values);
    Vector r(eig.values.size());
    for (Index i = 0; i < r.size(); ++i)
        r(i) = eig.values(i) > cut ? 1.0 / eig.values(i) : 0.0;
    return detail::apply_spectral(eig, r);
}

inline Matrix inv_pd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    detail::require_pd_values(eig.values);
    return detail::apply_spectral(eig, eig.values.cwiseInverse());
}

inline Matrix inv_sqrt_pd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    detail::require_pd_values(eig.values);
    return detail::apply_spectral(eig, eig.values.cwiseSqrt().cwiseInverse());
}

// log det of a positive definite matrix, natural logarithm.
inline double log_det_pd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    detail::require_pd_values(eig.values);
    return eig.values.array().log().sum();
}

// Spec name for the same operation (defined on PD inputs, errors otherwise).
inline double log_det_psd(const Matrix& m) { return log_det_pd(m); }

inline void require_index_set(const IndexSet& set, Index dim) {
    if (set.empty()) throw BadIndexSetError("index set is empty");
    Index prev = -1;
    for (Index i : set) {
        if (i <= prev) throw BadIndexSetError("index set is not strictly increasing");
        if (i < 0 || i >= dim) throw BadIndexSetError("index " + std::to_string(i) + " out of range");
        prev = i;
    }
}

inline IndexSet complement_of(const IndexSet& set, Index dim) {
    IndexSet out;
    out.reserve(static_cast<std::size_t>(dim) - set.size());
    std::size_t k = 0;
    for (Index i = 0; i < dim; ++i) {
        if (k < set.size() && set[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

inline Matrix submatrix(const Matrix& m, const IndexSet& rows, const IndexSet& cols) {
    Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            out(static_cast<Index>(r), static_cast<Index>(c)) = m(rows[r], cols[c]);
    return out;
}

// Schur complement M/A of the block A sitting on the *complement* of `keep`:
// returns B - X^T A^+ X, the conditional covariance of the kept indices. PD
// blocks go through a Cholesky solve, degenerate ones through pinv_psd.
inline Matrix schur_complement(const Matrix& m, const IndexSet& keep) {
    require_symmetric(m);
    require_index_set(keep, m.rows());
    {
        SymEig eig = sym_eig(m);
        detail::require_psd_values(eig.values);
    }
    const IndexSet drop = complement_of(keep, m.rows());
    if (drop.empty()) return symmetrized(m);

    const Matrix a = symmetrized(submatrix(m, drop, drop));
    const Matrix b = submatrix(m, keep, keep);
    const Matrix x = submatrix(m, drop, keep);

    Matrix ax;
    Eigen::LLT<Matrix> llt(a);
    bool solved = false;
    if (llt.info() == Eigen::Success) {
        ax = llt.solve(x);
        const double resid = (a * ax - x).cwiseAbs().maxCoeff();
        solved = resid <= kTolRecon * (1.0 + max_abs(x));
    }
    if (!solved) ax = pinv_psd(a) * x;
    return symmetrized(b - x.transpose() * ax);
}

// Geometric mean M # N = M^{1/2} (M^{-1/2} N M^{-1/2})^{1/2} M^{1/2} of two
// positive definite matrices.
inline Matrix geometric_mean(const Matrix& m, const Matrix& n) {
    require_square(m);
    require_square(n);
    if (m.rows() != n.rows()) throw DimensionMismatchError("geometric_mean: size mismatch");
    SymEig em = sym_eig(m);
    detail::require_pd_values(em.values);
    {
        SymEig en = sym_eig(n);
        detail::require_pd_values(en.values);
    }
    const Matrix rm = detail::apply_spectral(em, em.values.cwiseSqrt());
    const Matrix rmi = detail::apply_spectral(em, em.values.cwiseSqrt().cwiseInverse());
    const Matrix inner = sqrt_psd(symmetrized(rmi * n * rmi));
    return symmetrized(rm * inner * rm);
}

}  // namespace schurcm
