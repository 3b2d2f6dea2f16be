#pragma once

#include <string>
#include <utility>
#include <vector>

#include "schurcm/symplectic.hpp"

namespace schurcm {

// Data of a classical Gaussian map B -> B' (Gaussian measurement / channel at
// the CM level): gamma_B on the input block, gamma_Bp on the output block,
// delta the cross block. The assembled gamma_BBp = [[gamma_B, delta],
// [delta^T, gamma_Bp]] must be symmetric positive definite; it need not be a
// quantum CM.
struct GaussianMapSpec {
    Matrix gamma_B;
    Matrix gamma_Bp;
    Matrix delta;

    Matrix assembled() const {
        const Index b = gamma_B.rows();
        const Index bp = gamma_Bp.rows();
        if (gamma_B.cols() != b || gamma_Bp.cols() != bp)
            throw DimensionMismatchError("GaussianMapSpec: gamma blocks must be square");
        if (delta.rows() != b || delta.cols() != bp)
            throw DimensionMismatchError("GaussianMapSpec: delta must be dim(B) x dim(B')");
        Matrix g(b + bp, b + bp);
        g.topLeftCorner(b, b) = gamma_B;
        g.topRightCorner(b, bp) = delta;
        g.bottomLeftCorner(bp, b) = delta.transpose();
        g.bottomRightCorner(bp, bp) = gamma_Bp;
        return g;
    }

    void validate() const {
        const Matrix g = assembled();
        require_symmetric(g);
        if (min_eig_sym(g) <= kTolPd)
            throw NotPdError("GaussianMapSpec: assembled gamma_BB' is not positive definite");
    }
};

// Principal submatrix on the kept parties; party order of the partition is
// preserved regardless of selector order.
inline CovarianceMatrix partial_trace(const CovarianceMatrix& v, const PartySelector& keep) {
    const IndexSet idx = indices_for(v.partition(), keep);
    return CovarianceMatrix(submatrix(v.matrix(), idx, idx), restrict_to(v.partition(), keep));
}

// Theta V Theta where Theta flips the momentum quadrature of every mode of
// the transposed parties.
inline CovarianceMatrix partial_transpose(const CovarianceMatrix& v,
                                          const PartySelector& transposed) {
    validate_selector(v.partition(), transposed);
    Vector theta = Vector::Ones(v.dim());
    for (const std::string& label : transposed.labels) {
        const int off = v.partition().mode_offset(label);
        const int m = v.partition().party_modes(label);
        for (int k = 0; k < m; ++k) theta(2 * (off + k) + 1) = -1.0;
    }
    const Matrix out = theta.asDiagonal() * v.matrix() * theta.asDiagonal();
    return CovarianceMatrix(out, v.partition());
}

// Block-diagonal CM on the concatenated partitions.
inline CovarianceMatrix direct_sum(const CovarianceMatrix& v, const CovarianceMatrix& w) {
    std::vector<Party> parties = v.partition().parties();
    for (const Party& p : w.partition().parties()) {
        if (v.partition().has_party(p.label))
            throw LabelClashError("direct_sum: party '" + p.label + "' appears on both sides");
        parties.push_back(p);
    }
    Matrix m = Matrix::Zero(v.dim() + w.dim(), v.dim() + w.dim());
    m.topLeftCorner(v.dim(), v.dim()) = v.matrix();
    m.bottomRightCorner(w.dim(), w.dim()) = w.matrix();
    return CovarianceMatrix(std::move(m), ModePartition(std::move(parties)));
}

// Classical Gaussian map on the selected parties B:
//   V_B -> gamma_B' - delta^T (gamma_B + V_B)^{-1} delta,
// with the correlation blocks carried along by the equivalent joint Schur
// form Gamma(V) = (gamma_BB' + V) / (gamma_B + V_B). The mapped parties keep
// their labels; their mode counts become those of B'.
inline CovarianceMatrix classical_gaussian_map(const CovarianceMatrix& v,
                                               const GaussianMapSpec& spec,
                                               const PartySelector& on) {
    spec.validate();
    const IndexSet b_idx = indices_for(v.partition(), on);
    if (static_cast<Index>(b_idx.size()) != spec.gamma_B.rows())
        throw DimensionMismatchError("classical_gaussian_map: gamma_B is " +
                                     std::to_string(spec.gamma_B.rows()) +
                                     "-dimensional but the selected block has dimension " +
                                     std::to_string(b_idx.size()));
    if (spec.gamma_Bp.rows() % 2 != 0)
        throw DimensionMismatchError("classical_gaussian_map: gamma_B' must have even dimension");

    // Mapped parties keep their labels. A single selected party absorbs all of
    // B'; a multi-party selection needs dim(B') == dim(B) so mode counts carry.
    if (on.labels.size() > 1 && spec.gamma_Bp.rows() != static_cast<Index>(b_idx.size()))
        throw DimensionMismatchError(
            "classical_gaussian_map: multi-party selectors require dim(B') == dim(B)");

    const Index d = v.dim();
    const Index bp = spec.gamma_Bp.rows();

    // Extended matrix on (original indices..., B' appended), then Schur out B.
    Matrix ext = Matrix::Zero(d + bp, d + bp);
    ext.topLeftCorner(d, d) = v.matrix();
    for (std::size_t r = 0; r < b_idx.size(); ++r) {
        for (std::size_t c = 0; c < b_idx.size(); ++c)
            ext(b_idx[r], b_idx[c]) += spec.gamma_B(static_cast<Index>(r), static_cast<Index>(c));
        for (Index c = 0; c < bp; ++c) {
            ext(b_idx[r], d + c) = spec.delta(static_cast<Index>(r), c);
            ext(d + c, b_idx[r]) = spec.delta(static_cast<Index>(r), c);
        }
    }
    ext.bottomRightCorner(bp, bp) = spec.gamma_Bp;

    // (gamma_B + V_B) must be invertible for the map to be defined.
    if (min_eig_sym(submatrix(ext, b_idx, b_idx)) <= kTolPd)
        throw NotPdError("classical_gaussian_map: gamma_B + V_B is not positive definite");

    IndexSet keep = complement_of(b_idx, d);
    for (Index c = 0; c < bp; ++c) keep.push_back(d + c);
    const Matrix reduced = schur_complement(ext, keep);

    std::vector<Party> parties;
    for (const Party& p : v.partition().parties()) {
        bool mapped = false;
        for (const std::string& l : on.labels)
            if (l == p.label) mapped = true;
        if (!mapped)
            parties.push_back(p);
        else
            parties.push_back(Party{p.label, on.labels.size() == 1 ? static_cast<int>(bp) / 2
                                                                   : p.modes});
    }
    ModePartition out_partition(parties);
    // Row order of `reduced`: unmapped indices ascending, then B'. Build the
    // permutation that moves B' rows into the mapped parties' slots.
    const IndexSet unmapped = complement_of(b_idx, d);
    std::vector<Index> source_row(static_cast<std::size_t>(out_partition.dim()));
    {
        // walk parties of the output partition in order, pulling rows either
        // from the unmapped prefix or the B' suffix of `reduced`
        Index un_pos = 0, bp_pos = 0, out_pos = 0;
        for (const Party& p : out_partition.parties()) {
            bool mapped = false;
            for (const std::string& l : on.labels)
                if (l == p.label) mapped = true;
            const Index len = 2 * static_cast<Index>(p.modes);
            for (Index k = 0; k < len; ++k) {
                if (mapped)
                    source_row[static_cast<std::size_t>(out_pos++)] =
                        static_cast<Index>(unmapped.size()) + bp_pos++;
                else
                    source_row[static_cast<std::size_t>(out_pos++)] = un_pos++;
            }
        }
    }
    Matrix out(out_partition.dim(), out_partition.dim());
    for (Index r = 0; r < out.rows(); ++r)
        for (Index c = 0; c < out.cols(); ++c)
            out(r, c) = reduced(source_row[static_cast<std::size_t>(r)],
                                source_row[static_cast<std::size_t>(c)]);
    return CovarianceMatrix(std::move(out), std::move(out_partition));
}

// Conditional CM after a Gaussian measurement with seed CM `gamma` on the
// measured parties: (V + 0 (+) gamma_C) / (V_C + gamma_C). The measured
// parties drop out of the partition. Singular (V_C + gamma_C) goes through
// the pseudo-inverse path of schur_complement.
inline CovarianceMatrix measurement_update(const CovarianceMatrix& v, const Matrix& gamma,
                                           const PartySelector& measured) {
    const IndexSet c_idx = indices_for(v.partition(), measured);
    if (gamma.rows() != static_cast<Index>(c_idx.size()) || gamma.cols() != gamma.rows())
        throw DimensionMismatchError("measurement_update: gamma is " +
                                     std::to_string(gamma.rows()) + "x" +
                                     std::to_string(gamma.cols()) + " but the measured block has dimension " +
                                     std::to_string(c_idx.size()));
    require_symmetric(gamma);
    {
        SymEig eig = sym_eig(gamma);
        detail::require_psd_values(eig.values);
    }
    Matrix ext = v.matrix();
    for (std::size_t r = 0; r < c_idx.size(); ++r)
        for (std::size_t c = 0; c < c_idx.size(); ++c)
            ext(c_idx[r], c_idx[c]) += gamma(static_cast<Index>(r), static_cast<Index>(c));
    const IndexSet keep = complement_of(c_idx, v.dim());
    return CovarianceMatrix(schur_complement(ext, keep), drop_parties(v.partition(), measured));
}

// Schur complement onto everything but the conditioning parties: the
// conditional covariance of the remaining subsystem.
inline CovarianceMatrix conditional_cm(const CovarianceMatrix& v,
                                       const PartySelector& conditioning) {
    const IndexSet cond = indices_for(v.partition(), conditioning);
    const IndexSet keep = complement_of(cond, v.dim());
    if (keep.empty()) throw UnknownPartyError("conditional_cm: nothing left to keep");
    return CovarianceMatrix(schur_complement(v.matrix(), keep),
                            drop_parties(v.partition(), conditioning));
}

}  // namespace schurcm
