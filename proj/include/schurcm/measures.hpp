#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "schurcm/gaussian_ops.hpp"

namespace schurcm {

enum class MeasureKind {
    g_plus,
    g_minus,
    steerability,
    log_negativity,
    renyi_entropy,
    mutual_info_2,
    e2_upper,
    e2_estimate,
    purity,
};

struct MeasureValue {
    double value = 0.0;  // nats
    MeasureKind kind = MeasureKind::g_plus;
};

// g±(V) = sum_i max(± ln nu_i(V), 0). g+ - g- = (1/2) ln det V, and
// g-(V) of a conditional CM is the Gaussian steerability.
inline double g_plus(const CovarianceMatrix& v) {
    const Vector nus = symplectic_spectrum(v);
    double s = 0.0;
    for (Index i = 0; i < nus.size(); ++i) s += std::max(std::log(nus(i)), 0.0);
    return s;
}

inline double g_minus(const CovarianceMatrix& v) {
    const Vector nus = symplectic_spectrum(v);
    double s = 0.0;
    for (Index i = 0; i < nus.size(); ++i) s += std::max(-std::log(nus(i)), 0.0);
    return s;
}

// Gaussian steerability G(steering > steered) = g-(V / V_steering). The two
// selectors must be disjoint and together cover the whole partition; trace
// out spectator parties first.
inline double steerability(const CovarianceMatrix& v, const PartySelector& steering,
                           const PartySelector& steered) {
    validate_selector(v.partition(), steering);
    validate_selector(v.partition(), steered);
    std::size_t covered = steering.labels.size() + steered.labels.size();
    for (const std::string& a : steering.labels)
        for (const std::string& b : steered.labels)
            if (a == b) throw UnknownPartyError("steerability: selectors overlap on '" + a + "'");
    if (covered != v.partition().n_parties())
        throw UnknownPartyError("steerability: selectors must cover every party of the CM");
    return g_minus(conditional_cm(v, steering));
}

// Logarithmic negativity across the cut: g- of the partially transposed CM.
inline double log_negativity(const CovarianceMatrix& v, const PartySelector& cut) {
    const BonaFideResult bf = is_bona_fide(v);
    if (!bf.ok)
        throw NotBonaFideError("log_negativity: input is not a quantum CM (margin " +
                               std::to_string(bf.margin) + ")");
    return g_minus(partial_transpose(v, cut));
}

// Renyi-alpha entropy of a Gaussian state with quantum CM V, in nats.
// alpha = 1 is the von Neumann entropy with the 0 log 0 = 0 convention at
// nu = 1; S_2(V) = (1/2) ln det V.
inline double renyi_entropy(const CovarianceMatrix& v, double alpha) {
    if (!(alpha >= 1.0)) throw BadAlphaError("renyi_entropy: alpha must be >= 1");
    const BonaFideResult bf = is_bona_fide(v);
    if (!bf.ok)
        throw NotBonaFideError("renyi_entropy: input is not a quantum CM (margin " +
                               std::to_string(bf.margin) + ")");
    const Vector nus = symplectic_spectrum(v);
    double s = 0.0;
    if (alpha == 1.0) {
        for (Index i = 0; i < nus.size(); ++i) {
            const double np = 0.5 * (nus(i) + 1.0);
            const double nm = 0.5 * std::max(nus(i) - 1.0, 0.0);
            s += np * std::log(np);
            if (nm > 0.0) s -= nm * std::log(nm);
        }
    } else {
        for (Index i = 0; i < nus.size(); ++i) {
            const double np = std::pow(nus(i) + 1.0, alpha);
            const double nm = std::pow(std::max(nus(i) - 1.0, 0.0), alpha);
            s -= std::log(std::pow(2.0, alpha) / (np - nm)) / (alpha - 1.0);
        }
    }
    return s;
}

// Tr rho^2 = 1 / sqrt(det V).
inline double purity(const CovarianceMatrix& v) {
    const BonaFideResult bf = is_bona_fide(v);
    if (!bf.ok)
        throw NotBonaFideError("purity: input is not a quantum CM (margin " +
                               std::to_string(bf.margin) + ")");
    return std::exp(-0.5 * log_det_pd(v.matrix()));
}

// Renyi-2 mutual information across the cut:
//   I2(A:B) = (1/2) ln (det V_A det V_B / det V_AB).
inline double mutual_info_2(const CovarianceMatrix& v, const PartySelector& cut) {
    const PartySelector rest = complement_selector(v.partition(), cut);
    if (rest.labels.empty())
        throw UnknownPartyError("mutual_info_2: cut must leave at least one party on each side");
    const double ld_a = log_det_pd(partial_trace(v, cut).matrix());
    const double ld_b = log_det_pd(partial_trace(v, rest).matrix());
    const double ld_ab = log_det_pd(v.matrix());
    return 0.5 * (ld_a + ld_b - ld_ab);
}

// Pure quantum CM gamma# = V # (Omega V^{-1} Omega^T) <= V; the geometric-
// mean ansatz behind the Renyi-2 entanglement upper bound.
inline CovarianceMatrix gamma_sharp(const CovarianceMatrix& v) {
    const BonaFideResult bf = is_bona_fide(v);
    if (!bf.ok)
        throw NotBonaFideError("gamma_sharp: input is not a quantum CM (margin " +
                               std::to_string(bf.margin) + ")");
    const Matrix om = omega(v.n_modes());
    const Matrix vin = inv_pd(v.matrix());
    const Matrix mirrored = symmetrized(om * vin * om.transpose());
    return CovarianceMatrix(geometric_mean(v.matrix(), mirrored), v.partition());
}

struct E2Upper {
    double bound = 0.0;          // (1/2) ln det of the witness marginal on `cut`
    CovarianceMatrix witness;    // pure CM below V
};

// Upper bound on the Gaussian Renyi-2 entanglement across the cut, from the
// gamma# ansatz. The witness is pure, sits below V, and its bound never
// exceeds I2/2.
inline E2Upper e2_upper(const CovarianceMatrix& v, const PartySelector& cut) {
    CovarianceMatrix witness = gamma_sharp(v);
    const double bound = 0.5 * log_det_pd(partial_trace(witness, cut).matrix());
    return E2Upper{bound, std::move(witness)};
}

struct E2SearchConfig {
    int restarts = 4;
    int max_iters = 120;          // coordinate sweeps per restart
    double penalty_weight = 1e4;  // weight on sum of squared infeasibilities
    double step_decay = 0.5;
    SeededRng rng{0x5EEDULL, 0};
};

namespace detail {

// Principal matrix logarithm of an SPD matrix.
inline Matrix log_pd(const Matrix& m) {
    SymEig eig = sym_eig(m);
    require_pd_values(eig.values);
    return apply_spectral(eig, eig.values.array().log().matrix());
}

// Objective for the E2 search: (1/2) ln det gamma_A plus a quadratic penalty
// on the negative part of V - gamma. Returns the pure CM alongside.
struct E2Objective {
    const Matrix* v;
    const Matrix* om;
    const IndexSet* a_idx;
    double penalty_weight;
    double feas_tol;

    double operator()(const Matrix& h, double* feasible_value) const {
        const Matrix s = (Matrix(*om * h)).exp();
        const Matrix gamma = symmetrized(s * s.transpose());
        const Matrix ga = submatrix(gamma, *a_idx, *a_idx);
        double val;
        {
            Eigen::SelfAdjointEigenSolver<Matrix> es(ga);
            if (es.info() != Eigen::Success || es.eigenvalues()(0) <= 0.0) {
                if (feasible_value) *feasible_value = std::numeric_limits<double>::infinity();
                return std::numeric_limits<double>::infinity();
            }
            val = 0.5 * es.eigenvalues().array().log().sum();
        }
        Eigen::SelfAdjointEigenSolver<Matrix> diff(symmetrized(*v - gamma));
        double pen = 0.0;
        double lmin = 0.0;
        if (diff.info() == Eigen::Success) {
            lmin = diff.eigenvalues()(0);
            for (Index i = 0; i < diff.eigenvalues().size(); ++i) {
                const double neg = std::max(-diff.eigenvalues()(i), 0.0);
                pen += neg * neg;
            }
        } else {
            pen = std::numeric_limits<double>::infinity();
            lmin = -std::numeric_limits<double>::infinity();
        }
        if (feasible_value)
            *feasible_value = lmin >= -feas_tol ? val : std::numeric_limits<double>::infinity();
        return val + penalty_weight * pen;
    }
};

}  // namespace detail

// Heuristic local-search estimate of the Gaussian Renyi-2 entanglement
//   E2(A:B) = inf over pure gamma <= V of (1/2) ln det gamma_A.
// Pure CMs are parameterized as gamma = S S^T, S = exp(Omega H) with H
// symmetric, which reaches every pure CM. Derivative-free coordinate descent
// with geometric step decay; one restart is seeded at the gamma# witness and
// the returned value is the best *feasible* iterate, so the result is always
// an upper bound on the infimum and never exceeds e2_upper. This is an
// estimate, not a certified optimum.
inline double e2_estimate(const CovarianceMatrix& v, const PartySelector& cut,
                          E2SearchConfig cfg) {
    const CovarianceMatrix witness = gamma_sharp(v);
    const Matrix om = omega(v.n_modes());
    const IndexSet a_idx = indices_for(v.partition(), cut);
    const double feas_tol = 1e-10 * (1.0 + max_abs(v.matrix()));

    detail::E2Objective obj{&v.matrix(), &om, &a_idx, cfg.penalty_weight, feas_tol};

    // exp(Omega H0) = witness^{1/2}, so restart 0 starts exactly at gamma#.
    const Matrix h0 = symmetrized(-om * (0.5 * detail::log_pd(witness.matrix())));
    const Index d = v.dim();

    double best_feasible = 0.5 * log_det_pd(partial_trace(witness, cut).matrix());

    for (int restart = 0; restart < std::max(cfg.restarts, 1); ++restart) {
        Matrix h = h0;
        if (restart > 0) {
            const double jitter = 0.05 * restart;
            for (Index i = 0; i < d; ++i)
                for (Index j = i; j < d; ++j) {
                    const double g = jitter * cfg.rng.next_gaussian();
                    h(i, j) += g;
                    h(j, i) = h(i, j);
                }
        }
        double feas;
        double cur = obj(h, &feas);
        best_feasible = std::min(best_feasible, feas);

        double step = 0.25;
        for (int sweep = 0; sweep < cfg.max_iters && step > 1e-9; ++sweep) {
            bool improved = false;
            for (Index i = 0; i < d; ++i) {
                for (Index j = i; j < d; ++j) {
                    for (const double dir : {step, -step}) {
                        Matrix trial = h;
                        trial(i, j) += dir;
                        trial(j, i) = trial(i, j);
                        const double val = obj(trial, &feas);
                        best_feasible = std::min(best_feasible, feas);
                        if (val < cur - 1e-14) {
                            cur = val;
                            h = trial;
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if (!improved) step *= cfg.step_decay;
        }
    }
    return best_feasible;
}

// f_alpha(x): the scalar function whose convexity decides whether the
// Renyi-alpha entropy is subadditive under geometric means. f_2(x) = x.
inline double f_alpha(double x, double alpha) {
    if (!(x > 0.0)) throw BadAlphaError("f_alpha: x must be positive");
    if (!(alpha >= 1.0)) throw BadAlphaError("f_alpha: alpha must be >= 1");
    const double ex = std::exp(x);
    if (alpha == 1.0) {
        const double p = 0.5 * (ex + 1.0);
        const double m = 0.5 * (ex - 1.0);
        return p * std::log(p) - (m > 0.0 ? m * std::log(m) : 0.0);
    }
    const double num = std::pow(ex + 1.0, alpha) - std::pow(ex - 1.0, alpha);
    return -std::log(std::pow(2.0, alpha) / num) / (alpha - 1.0);
}

// Closed form of f_alpha'' for alpha > 1; nonnegative for all x > 0 exactly
// when alpha >= 2.
inline double f_alpha_dd(double x, double alpha) {
    if (!(x > 0.0)) throw BadAlphaError("f_alpha_dd: x must be positive");
    if (!(alpha > 1.0)) throw BadAlphaError("f_alpha_dd: alpha must be > 1");
    const double c = std::cosh(0.5 * x);
    const double s = std::sinh(0.5 * x);
    const double ca = std::pow(c, alpha);
    const double sa = std::pow(s, alpha);
    const double shx = std::sinh(x);
    const double pre = (alpha / (alpha - 1.0)) * (ca * sa) / (shx * shx * (ca - sa));
    const double bracket =
        ca * std::pow(s, 2.0 - alpha) - sa * std::pow(c, 2.0 - alpha) - alpha + 1.0;
    return pre * bracket;
}

// Minimal bona fide CM above V: Z = S diag(max(nu,1)) S^T from Williamson's
// form. Z >= V, Z is a quantum CM, and (1/2) ln det Z = g+(V).
inline CovarianceMatrix variational_certificate_gplus(const CovarianceMatrix& v) {
    const WilliamsonResult wr = williamson(v);
    const int n = v.n_modes();
    Vector k(2 * n);
    for (int i = 0; i < n; ++i) k(2 * i) = k(2 * i + 1) = std::max(wr.nus(i), 1.0);
    return CovarianceMatrix(symmetrized(wr.S * k.asDiagonal() * wr.S.transpose()),
                            v.partition());
}

}  // namespace schurcm
