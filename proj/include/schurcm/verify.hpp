#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "schurcm/counterexample.hpp"
#include "schurcm/measures.hpp"

namespace schurcm {

// Configuration of one randomized check: ensembles draw parties of up to
// max_modes_per_party modes, symplectic eigenvalues up to nu_max, squeezing
// strength `strength`; inequalities get slack tol * scale.
struct CheckConfig {
    int trials = 200;
    std::uint64_t seed = 42;
    int max_modes_per_party = 2;
    double nu_max = 3.0;
    double strength = 0.7;
    double tol = 1e-8;
};

// Outcome of a randomized check. worst_margin is the minimum signed slack
// over all trials; slack >= 0 means the inequality held with room tol, a
// negative value is a violation beyond tolerance. worst_seed_stream is the
// RNG stream (trial index) of the worst trial, for single-trial replay.
struct PropertyReport {
    std::string name;
    int trials = 0;
    int failures = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::uint64_t worst_seed_stream = 0;
    double elapsed_s = 0.0;
};

namespace detail {

class ReportBuilder {
public:
    explicit ReportBuilder(std::string name) : start_(std::chrono::steady_clock::now()) {
        rep_.name = std::move(name);
    }

    void add(double slack, std::uint64_t stream) {
        ++rep_.trials;
        if (slack < 0.0) ++rep_.failures;
        if (slack < rep_.worst_margin) {
            rep_.worst_margin = slack;
            rep_.worst_seed_stream = stream;
        }
    }

    PropertyReport finish() {
        rep_.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return rep_;
    }

private:
    PropertyReport rep_;
    std::chrono::steady_clock::time_point start_;
};

// Slack of the operator inequality L >= R.
inline double op_slack(const Matrix& lhs, const Matrix& rhs, double tol) {
    const double scale = 1.0 + std::max(max_abs(lhs), max_abs(rhs));
    return min_eig_sym(lhs - rhs) + tol * scale;
}

// Slack of the scalar inequality a >= b.
inline double ge_slack(double a, double b, double tol) {
    return a - b + tol * (1.0 + std::abs(a) + std::abs(b));
}

// Slack of the equality |a - b| <= tol * scale.
inline double eq_slack(double a, double b, double tol) {
    return tol * (1.0 + std::abs(a) + std::abs(b)) - std::abs(a - b);
}

inline int draw_modes(SeededRng& rng, int max_modes) {
    return 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_modes)));
}

inline ModePartition draw_partition(const std::vector<std::string>& labels, SeededRng& rng,
                                    int max_modes) {
    std::vector<Party> parties;
    parties.reserve(labels.size());
    for (const std::string& l : labels) parties.push_back(Party{l, draw_modes(rng, max_modes)});
    return ModePartition(parties);
}

// Generic positive definite ensemble (symplectic eigenvalues in [0.3, nu_max],
// so both quantum and non-quantum inputs appear).
inline CovarianceMatrix draw_pd(const ModePartition& p, const CheckConfig& cfg, SeededRng& rng) {
    return random_cm(p, 0.3, cfg.nu_max, cfg.strength, rng);
}

inline CovarianceMatrix draw_quantum(const ModePartition& p, const CheckConfig& cfg,
                                     SeededRng& rng) {
    return random_quantum_cm(p, cfg.nu_max, cfg.strength, rng);
}

inline CovarianceMatrix draw_pure(const ModePartition& p, const CheckConfig& cfg, SeededRng& rng) {
    return random_quantum_cm(p, 1.0, cfg.strength, rng);
}

// Small PSD bump, for monotonicity trials (V + bump >= V).
inline Matrix draw_psd_bump(Index dim, SeededRng& rng) {
    Matrix b(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) b(i, j) = rng.next_gaussian();
    return Matrix(0.1 / static_cast<double>(dim) * (b * b.transpose()));
}

inline GaussianMapSpec draw_map_spec(int in_modes, int out_modes, const CheckConfig& cfg,
                                     SeededRng& rng) {
    const ModePartition scratch({Party{"G", in_modes + out_modes}});
    const Matrix g = random_cm(scratch, 0.5, cfg.nu_max, cfg.strength, rng).matrix();
    const Index b = 2 * in_modes;
    const Index bp = 2 * out_modes;
    GaussianMapSpec spec;
    spec.gamma_B = g.topLeftCorner(b, b);
    spec.gamma_Bp = g.bottomRightCorner(bp, bp);
    spec.delta = g.topRightCorner(b, bp);
    return spec;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks. Every check draws its per-trial randomness from
// SeededRng(cfg.seed, trial) so any trial can be replayed on its own.
// ---------------------------------------------------------------------------

// log det V_ABC + log det V_C <= log det V_AC + log det V_BC for PSD V.
inline PropertyReport check_ssa_logdet(const CheckConfig& cfg) {
    detail::ReportBuilder rb("ssa_logdet");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const double lhs = log_det_pd(partial_trace(v, {"A", "C"}).matrix()) +
                           log_det_pd(partial_trace(v, {"B", "C"}).matrix());
        const double rhs = log_det_pd(v.matrix()) + log_det_pd(partial_trace(v, {"C"}).matrix());
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// log det V_AC + log det V_BC - log det V_A - log det V_B >= 0 for quantum V.
inline PropertyReport check_logdet_ineq(const CheckConfig& cfg) {
    detail::ReportBuilder rb("logdet_ineq");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const double lhs = log_det_pd(partial_trace(v, {"A", "C"}).matrix()) +
                           log_det_pd(partial_trace(v, {"B", "C"}).matrix());
        const double rhs = log_det_pd(partial_trace(v, {"A"}).matrix()) +
                           log_det_pd(partial_trace(v, {"B"}).matrix());
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Partial trace in the denominator increases the Schur complement:
// V_ABC / V_BC <= V_AC / V_C for any PSD tripartite CM.
inline PropertyReport check_thm1(const CheckConfig& cfg) {
    detail::ReportBuilder rb("thm1");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const Matrix lhs = conditional_cm(partial_trace(v, {"A", "C"}), {"C"}).matrix();
        const Matrix rhs = conditional_cm(v, {"B", "C"}).matrix();
        rb.add(detail::op_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Classical Gaussian maps in the denominator increase the Schur complement:
// Gamma(V_AB) / Gamma(V_B) >= V_AB / V_B.
inline PropertyReport check_thm2(const CheckConfig& cfg) {
    detail::ReportBuilder rb("thm2");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const int out_modes = detail::draw_modes(rng, cfg.max_modes_per_party);
        const GaussianMapSpec spec =
            detail::draw_map_spec(p.party_modes("B"), out_modes, cfg, rng);
        const CovarianceMatrix mapped = classical_gaussian_map(v, spec, {"B"});
        const Matrix lhs = conditional_cm(mapped, {"B"}).matrix();
        const Matrix rhs = conditional_cm(v, {"B"}).matrix();
        rb.add(detail::op_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Monogamy of the Schur complement for quantum CMs:
// V_AC / V_A >= Omega_C^T (V_BC / V_B)^{-1} Omega_C.
inline PropertyReport check_thm3(const CheckConfig& cfg) {
    detail::ReportBuilder rb("thm3");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const Matrix lhs = conditional_cm(partial_trace(v, {"A", "C"}), {"A"}).matrix();
        const Matrix cond_bc = conditional_cm(partial_trace(v, {"B", "C"}), {"B"}).matrix();
        const Matrix om = omega(p.party_modes("C"));
        const Matrix rhs = symmetrized(om.transpose() * inv_pd(cond_bc) * om);
        rb.add(detail::op_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// g-(V_AB) >= g-(V_A) + g-(V_B) for PD bipartite matrices.
inline PropertyReport check_gminus_superadd(const CheckConfig& cfg) {
    detail::ReportBuilder rb("gminus_superadd");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const double lhs = g_minus(v);
        const double rhs =
            g_minus(partial_trace(v, {"A"})) + g_minus(partial_trace(v, {"B"}));
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// g- is convex and monotonically decreasing in the CM.
inline PropertyReport check_gminus_convex(const CheckConfig& cfg) {
    detail::ReportBuilder rb("gminus_convex");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A"}, rng, 2 * cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const CovarianceMatrix w = detail::draw_pd(p, cfg, rng);
        const double prob = rng.uniform(0.05, 0.95);
        const CovarianceMatrix mix(prob * v.matrix() + (1.0 - prob) * w.matrix(), p);
        const double convex_slack = detail::ge_slack(
            prob * g_minus(v) + (1.0 - prob) * g_minus(w), g_minus(mix), cfg.tol);
        const CovarianceMatrix bumped(v.matrix() + detail::draw_psd_bump(v.dim(), rng), p);
        const double mono_slack = detail::ge_slack(g_minus(v), g_minus(bumped), cfg.tol);
        rb.add(std::min(convex_slack, mono_slack), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Witness that g+ is neither convex nor concave: on one-mode multiples of the
// identity, midpoint convexity fails on one side of nu = 1 and midpoint
// concavity on the other. Positive slack = both strict violations observed.
inline PropertyReport check_gplus_nonconvex_witness(const CheckConfig& cfg) {
    detail::ReportBuilder rb("gplus_nonconvex_witness");
    const ModePartition p({Party{"A", 1}});
    const auto gplus_of = [&](double nu) {
        return g_plus(CovarianceMatrix(nu * Matrix::Identity(2, 2), p));
    };
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const double a = rng.uniform(1.5, 4.0);
        const double b = rng.uniform(6.0, 12.0);
        const double break_convexity =
            gplus_of(0.5 * (a + b)) - 0.5 * (gplus_of(a) + gplus_of(b));
        const double c = rng.uniform(0.05, 0.3);
        const double d = rng.uniform(1.1, 1.5);
        const double break_concavity =
            0.5 * (gplus_of(c) + gplus_of(d)) - gplus_of(0.5 * (c + d));
        rb.add(std::min(break_convexity, break_concavity) - cfg.tol,
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// One-sided sampling of the variational expression: for a symplectic isometry
// S built from k modes of a random symplectic, sqrt det (S^T V S) is at least
// the product of the k smallest symplectic eigenvalues of V.
inline PropertyReport check_var_expr_sampled(const CheckConfig& cfg) {
    detail::ReportBuilder rb("var_expr_sampled");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const int n = detail::draw_modes(rng, 3);
        const ModePartition p = single_party(n);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const Matrix s = random_symplectic(n, cfg.strength, rng);
        const int k = detail::draw_modes(rng, n);
        // pick k distinct modes
        std::vector<int> modes;
        while (static_cast<int>(modes.size()) < k) {
            const int m = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            bool seen = false;
            for (int q : modes) seen = seen || q == m;
            if (!seen) modes.push_back(m);
        }
        std::sort(modes.begin(), modes.end());
        Matrix iso(2 * n, 2 * k);
        for (int j = 0; j < k; ++j) {
            iso.col(2 * j) = s.col(2 * modes[static_cast<std::size_t>(j)]);
            iso.col(2 * j + 1) = s.col(2 * modes[static_cast<std::size_t>(j)] + 1);
        }
        const Matrix compressed = symmetrized(iso.transpose() * v.matrix() * iso);
        const double lhs = std::exp(0.5 * log_det_pd(compressed));
        const Vector nus = symplectic_spectrum(v);
        double rhs = 1.0;
        for (int j = 0; j < k; ++j) rhs *= nus(j);
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// The Williamson ansatz Z = S diag(max(nu,1)) S^T certifies g+:
// Z >= V, Z is bona fide, (1/2) log det Z = g+(V).
inline PropertyReport check_second_var_certificate(const CheckConfig& cfg) {
    detail::ReportBuilder rb("second_var_certificate");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A"}, rng, 2 * cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const CovarianceMatrix z = variational_certificate_gplus(v);
        const double scale = 1.0 + max_abs(z.matrix());
        const double dominates = min_eig_sym(z.matrix() - v.matrix()) + cfg.tol * scale;
        const double bona = is_bona_fide(z).margin + cfg.tol * scale;
        const double value =
            detail::eq_slack(0.5 * log_det_pd(z.matrix()), g_plus(v), cfg.tol);
        rb.add(std::min({dominates, bona, value}), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Steerability is convex and decreasing in the CM.
inline PropertyReport check_steer_props_1(const CheckConfig& cfg) {
    detail::ReportBuilder rb("steer_props_1");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const CovarianceMatrix w = detail::draw_quantum(p, cfg, rng);
        const double prob = rng.uniform(0.05, 0.95);
        const CovarianceMatrix mix(prob * v.matrix() + (1.0 - prob) * w.matrix(), p);
        const double gv = steerability(v, {"A"}, {"B"});
        const double gw = steerability(w, {"A"}, {"B"});
        const double convex_slack =
            detail::ge_slack(prob * gv + (1.0 - prob) * gw,
                             steerability(mix, {"A"}, {"B"}), cfg.tol);
        const CovarianceMatrix bumped(v.matrix() + detail::draw_psd_bump(v.dim(), rng), p);
        const double mono_slack =
            detail::ge_slack(gv, steerability(bumped, {"A"}, {"B"}), cfg.tol);
        rb.add(std::min(convex_slack, mono_slack), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Steerability is additive over direct sums.
inline PropertyReport check_steer_props_2(const CheckConfig& cfg) {
    detail::ReportBuilder rb("steer_props_2");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p1 = detail::draw_partition({"A1", "B1"}, rng, cfg.max_modes_per_party);
        const ModePartition p2 = detail::draw_partition({"A2", "B2"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p1, cfg, rng);
        const CovarianceMatrix w = detail::draw_quantum(p2, cfg, rng);
        const CovarianceMatrix sum = direct_sum(v, w);
        const double joint = steerability(sum, {"A1", "A2"}, {"B1", "B2"});
        const double parts = steerability(v, {"A1"}, {"B1"}) + steerability(w, {"A2"}, {"B2"});
        rb.add(detail::eq_slack(joint, parts, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Steerability decreases under classical Gaussian maps on the steering party.
inline PropertyReport check_steer_props_3(const CheckConfig& cfg) {
    detail::ReportBuilder rb("steer_props_3");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const int out_modes = detail::draw_modes(rng, cfg.max_modes_per_party);
        const GaussianMapSpec spec =
            detail::draw_map_spec(p.party_modes("A"), out_modes, cfg, rng);
        const CovarianceMatrix mapped = classical_gaussian_map(v, spec, {"A"});
        rb.add(detail::ge_slack(steerability(v, {"A"}, {"B"}),
                                steerability(mapped, {"A"}, {"B"}), cfg.tol),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Steerability decreases under Gaussian measurements on the steered party.
inline PropertyReport check_steer_props_4(const CheckConfig& cfg) {
    detail::ReportBuilder rb("steer_props_4");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const CovarianceMatrix gamma =
            detail::draw_quantum(ModePartition({Party{"C", p.party_modes("C")}}), cfg, rng);
        const CovarianceMatrix measured = measurement_update(v, gamma.matrix(), {"C"});
        rb.add(detail::ge_slack(steerability(v, {"A"}, {"B", "C"}),
                                steerability(measured, {"A"}, {"B"}), cfg.tol),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// G(A > C) <= g+(V_BC / V_B) for any tripartite quantum CM.
inline PropertyReport check_steer_props_5(const CheckConfig& cfg) {
    detail::ReportBuilder rb("steer_props_5");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const double lhs = g_plus(conditional_cm(partial_trace(v, {"B", "C"}), {"B"}));
        const double rhs = steerability(partial_trace(v, {"A", "C"}), {"A"}, {"C"});
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// G(A > B1B2) >= G(A > B1) + G(A > B2): steered-party monogamy, always holds.
inline PropertyReport check_mon_steer_1(const CheckConfig& cfg) {
    detail::ReportBuilder rb("mon_steer_1");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p =
            detail::draw_partition({"A", "B1", "B2"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const double joint = steerability(v, {"A"}, {"B1", "B2"});
        const double parts = steerability(partial_trace(v, {"A", "B1"}), {"A"}, {"B1"}) +
                             steerability(partial_trace(v, {"A", "B2"}), {"A"}, {"B2"});
        rb.add(detail::ge_slack(joint, parts, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

enum class MonSteer2Regime { single_mode_A, pure_global, general };

// G(B1B2 > A) >= G(B1 > A) + G(B2 > A): steering-party monogamy. Holds when
// A has a single mode or the global CM is pure; the general mixed regime
// admits violations (the bundled counterexample runs as trial 0 there).
inline PropertyReport check_mon_steer_2(const CheckConfig& cfg, MonSteer2Regime regime) {
    const char* name = regime == MonSteer2Regime::single_mode_A ? "mon_steer_2_single_mode_A"
                       : regime == MonSteer2Regime::pure_global ? "mon_steer_2_pure_global"
                                                                : "mon_steer_2_general";
    detail::ReportBuilder rb(name);
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        CovarianceMatrix v = [&]() {
            if (regime == MonSteer2Regime::general && t == 0) return counterexample_cm();
            std::vector<Party> parties;
            const int n_a = regime == MonSteer2Regime::single_mode_A ? 1
                            : regime == MonSteer2Regime::general
                                ? 2
                                : detail::draw_modes(rng, cfg.max_modes_per_party);
            parties.push_back(Party{"A", n_a});
            parties.push_back(Party{"B1", regime == MonSteer2Regime::general
                                              ? 1
                                              : detail::draw_modes(rng, cfg.max_modes_per_party)});
            parties.push_back(Party{"B2", regime == MonSteer2Regime::general
                                              ? 1
                                              : detail::draw_modes(rng, cfg.max_modes_per_party)});
            const ModePartition p(parties);
            return regime == MonSteer2Regime::pure_global ? detail::draw_pure(p, cfg, rng)
                                                          : detail::draw_quantum(p, cfg, rng);
        }();
        const double joint = steerability(v, {"B1", "B2"}, {"A"});
        const double parts = steerability(partial_trace(v, {"A", "B1"}), {"B1"}, {"A"}) +
                             steerability(partial_trace(v, {"A", "B2"}), {"B2"}, {"A"});
        rb.add(detail::ge_slack(joint, parts, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Renyi-2 hierarchy I2/2 >= E2-upper >= max steerability; the three collapse
// onto (1/2) log det V_A on pure states.
inline PropertyReport check_hierarchy(const CheckConfig& cfg) {
    detail::ReportBuilder rb("hierarchy");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const double half_i2 = 0.5 * mutual_info_2(v, {"A"});
        const double upper = e2_upper(v, {"A"}).bound;
        const double steer = std::max(steerability(v, {"A"}, {"B"}),
                                      steerability(v, {"B"}, {"A"}));
        double slack = std::min(detail::ge_slack(half_i2, upper, cfg.tol),
                                detail::ge_slack(upper, steer, cfg.tol));

        const CovarianceMatrix pure = detail::draw_pure(p, cfg, rng);
        const double target = 0.5 * log_det_pd(partial_trace(pure, {"A"}).matrix());
        slack = std::min({slack,
                          detail::eq_slack(0.5 * mutual_info_2(pure, {"A"}), target, 1e-6),
                          detail::eq_slack(e2_upper(pure, {"A"}).bound, target, 1e-6),
                          detail::eq_slack(steerability(pure, {"A"}, {"B"}), target, 1e-6)});
        rb.add(slack, static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Monogamy of the Renyi-2 entanglement on pure tripartite states, checked in
// the strengthened form (1/2) log det V_A >= E2up(A:B) + E2up(A:C).
inline PropertyReport check_e2_monogamy_pure(const CheckConfig& cfg) {
    detail::ReportBuilder rb("e2_monogamy_pure");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pure(p, cfg, rng);
        const double lhs = 0.5 * log_det_pd(partial_trace(v, {"A"}).matrix());
        const double rhs = e2_upper(partial_trace(v, {"A", "B"}), {"A"}).bound +
                           e2_upper(partial_trace(v, {"A", "C"}), {"A"}).bound;
        rb.add(detail::ge_slack(lhs, rhs, cfg.tol), static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// det ((Z + gamma_C) / (Z_C + gamma_C)) <= det Z for bona fide Z and pure
// gamma_C: purity can only increase under pure Gaussian measurements.
inline PropertyReport check_det_measurement(const CheckConfig& cfg) {
    detail::ReportBuilder rb("det_measurement");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix z = detail::draw_quantum(p, cfg, rng);
        const CovarianceMatrix gamma =
            detail::draw_pure(ModePartition({Party{"C", p.party_modes("C")}}), cfg, rng);
        const CovarianceMatrix measured = measurement_update(z, gamma.matrix(), {"C"});
        rb.add(detail::ge_slack(log_det_pd(z.matrix()), log_det_pd(measured.matrix()), cfg.tol),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Hilbert-Schmidt block bound ||X||_2^2 <= ||A||_2 ||B||_2 for PSD blocks.
inline PropertyReport check_hs_block_lemma(const CheckConfig& cfg) {
    detail::ReportBuilder rb("hs_block_lemma");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const IndexSet a_idx = indices_for(v.partition(), {"A"});
        const IndexSet b_idx = indices_for(v.partition(), {"B"});
        const Matrix a = submatrix(v.matrix(), a_idx, a_idx);
        const Matrix b = submatrix(v.matrix(), b_idx, b_idx);
        const Matrix x = submatrix(v.matrix(), a_idx, b_idx);
        rb.add(detail::ge_slack(a.norm() * b.norm(), x.squaredNorm(), cfg.tol),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Convexity dichotomy of f_alpha: convex on the grid for alpha in {2, 2.5, 3},
// strictly non-convex somewhere for alpha = 1.5, concave for alpha = 1.
inline PropertyReport check_falpha_convexity(const CheckConfig& cfg) {
    detail::ReportBuilder rb("falpha_convexity");
    (void)cfg;
    const int grid = 200;
    const auto grid_x = [&](int i) { return 10.0 * (i + 1) / grid; };

    double slack = std::numeric_limits<double>::infinity();
    for (const double alpha : {2.0, 2.5, 3.0}) {
        double min_dd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i) min_dd = std::min(min_dd, f_alpha_dd(grid_x(i), alpha));
        slack = std::min(slack, min_dd + 1e-12);
    }
    {
        double min_dd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i) min_dd = std::min(min_dd, f_alpha_dd(grid_x(i), 1.5));
        slack = std::min(slack, -1e-6 - min_dd);  // need a point with f'' < -1e-6
    }
    {
        // alpha = 1 has no closed-form second derivative here; use centered
        // differences and require concavity.
        const double h = 1e-4;
        double max_fd = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < grid; ++i) {
            const double x = grid_x(i);
            const double fd =
                (f_alpha(x + h, 1.0) - 2.0 * f_alpha(x, 1.0) + f_alpha(x - h, 1.0)) / (h * h);
            max_fd = std::max(max_fd, fd);
        }
        slack = std::min(slack, 1e-5 - max_fd);
    }
    rb.add(slack, 0);
    return rb.finish();
}

// Purification identity for pure tripartite CMs:
// V_AB / V_B = Omega_A^T (V_AC / V_C)^{-1} Omega_A, plus the symplectic-CM
// inverse V^{-1} = Omega^T V Omega.
inline PropertyReport check_purification_identity(const CheckConfig& cfg) {
    detail::ReportBuilder rb("purification_identity");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"A", "B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_pure(p, cfg, rng);
        const Matrix lhs = conditional_cm(partial_trace(v, {"A", "B"}), {"B"}).matrix();
        const Matrix cond_ac = conditional_cm(partial_trace(v, {"A", "C"}), {"C"}).matrix();
        const Matrix om_a = omega(p.party_modes("A"));
        const Matrix rhs = symmetrized(om_a.transpose() * inv_pd(cond_ac) * om_a);
        const double scale = 1.0 + std::max(max_abs(lhs), max_abs(rhs));
        double slack = cfg.tol * scale - (lhs - rhs).cwiseAbs().maxCoeff();

        const Matrix vin = inv_pd(v.matrix());
        const Matrix om = omega(v.n_modes());
        const Matrix mirrored = symmetrized(om.transpose() * v.matrix() * om);
        const double scale2 = 1.0 + std::max(max_abs(vin), max_abs(mirrored));
        slack = std::min(slack, cfg.tol * scale2 - (vin - mirrored).cwiseAbs().maxCoeff());
        rb.add(slack, static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Williamson round-trip on random PD matrices, one to six modes.
inline PropertyReport check_williamson_roundtrip(const CheckConfig& cfg) {
    detail::ReportBuilder rb("williamson_roundtrip");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const int n = detail::draw_modes(rng, 6);
        const ModePartition p = single_party(n);
        const CovarianceMatrix v = detail::draw_pd(p, cfg, rng);
        const WilliamsonResult wr = williamson(v);
        const Matrix om = omega(n);
        const double scale = 1.0 + max_abs(v.matrix());
        Vector k(2 * n);
        for (int i = 0; i < n; ++i) k(2 * i) = k(2 * i + 1) = wr.nus(i);
        const double sympl = (wr.S * om * wr.S.transpose() - om).cwiseAbs().maxCoeff();
        const double recon =
            (wr.S * k.asDiagonal() * wr.S.transpose() - v.matrix()).cwiseAbs().maxCoeff();
        const double spec_gap = (wr.nus - symplectic_spectrum(v)).cwiseAbs().maxCoeff();
        rb.add(cfg.tol * scale - std::max({sympl, recon, spec_gap}),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// Purity never decreases under measurement with a pure seed.
inline PropertyReport check_purity_measurement(const CheckConfig& cfg) {
    detail::ReportBuilder rb("purity_measurement");
    for (int t = 0; t < cfg.trials; ++t) {
        SeededRng rng(cfg.seed, static_cast<std::uint64_t>(t));
        const ModePartition p = detail::draw_partition({"B", "C"}, rng, cfg.max_modes_per_party);
        const CovarianceMatrix v = detail::draw_quantum(p, cfg, rng);
        const CovarianceMatrix gamma =
            detail::draw_pure(ModePartition({Party{"C", p.party_modes("C")}}), cfg, rng);
        const CovarianceMatrix measured = measurement_update(v, gamma.matrix(), {"C"});
        rb.add(detail::ge_slack(purity(measured), purity(v), cfg.tol),
               static_cast<std::uint64_t>(t));
    }
    return rb.finish();
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct CheckInfo {
    std::string name;
    bool violations_allowed;  // report-only checks never gate an exit code
    std::function<PropertyReport(const CheckConfig&)> run;
};

inline const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> registry = {
        {"ssa_logdet", false, check_ssa_logdet},
        {"logdet_ineq", false, check_logdet_ineq},
        {"thm1", false, check_thm1},
        {"thm2", false, check_thm2},
        {"thm3", false, check_thm3},
        {"gminus_superadd", false, check_gminus_superadd},
        {"gminus_convex", false, check_gminus_convex},
        {"gplus_nonconvex_witness", false, check_gplus_nonconvex_witness},
        {"var_expr_sampled", false, check_var_expr_sampled},
        {"second_var_certificate", false, check_second_var_certificate},
        {"steer_props_1", false, check_steer_props_1},
        {"steer_props_2", false, check_steer_props_2},
        {"steer_props_3", false, check_steer_props_3},
        {"steer_props_4", false, check_steer_props_4},
        {"steer_props_5", false, check_steer_props_5},
        {"mon_steer_1", false, check_mon_steer_1},
        {"mon_steer_2_single_mode_A", false,
         [](const CheckConfig& c) { return check_mon_steer_2(c, MonSteer2Regime::single_mode_A); }},
        {"mon_steer_2_pure_global", false,
         [](const CheckConfig& c) { return check_mon_steer_2(c, MonSteer2Regime::pure_global); }},
        {"mon_steer_2_general", true,
         [](const CheckConfig& c) { return check_mon_steer_2(c, MonSteer2Regime::general); }},
        {"hierarchy", false, check_hierarchy},
        {"e2_monogamy_pure", false, check_e2_monogamy_pure},
        {"det_measurement", false, check_det_measurement},
        {"hs_block_lemma", false, check_hs_block_lemma},
        {"falpha_convexity", false, check_falpha_convexity},
        {"purification_identity", false, check_purification_identity},
        {"williamson_roundtrip", false, check_williamson_roundtrip},
        {"purity_measurement", false, check_purity_measurement},
    };
    return registry;
}

inline const CheckInfo& find_check(const std::string& name) {
    for (const CheckInfo& info : check_registry())
        if (info.name == name) return info;
    throw UnknownCheckError("unknown check '" + name + "'");
}

inline PropertyReport run_check(const std::string& name, const CheckConfig& cfg) {
    return find_check(name).run(cfg);
}

inline std::vector<PropertyReport> run_all_checks(const CheckConfig& cfg) {
    std::vector<PropertyReport> reports;
    reports.reserve(check_registry().size());
    for (const CheckInfo& info : check_registry()) reports.push_back(info.run(cfg));
    return reports;
}

// Published figures of the steering-monogamy counterexample.
struct CounterexampleRecord {
    double nu_min = 0.0;
    double gap = 0.0;
    double g_joint = 0.0;
    double g_b1 = 0.0;
    double g_b2 = 0.0;
};

inline CounterexampleRecord reproduce_counterexample() {
    const CovarianceMatrix v = counterexample_cm();
    CounterexampleRecord rec;
    rec.nu_min = symplectic_spectrum(v)(0);
    rec.g_joint = steerability(v, {"B1", "B2"}, {"A"});
    rec.g_b1 = steerability(partial_trace(v, {"A", "B1"}), {"B1"}, {"A"});
    rec.g_b2 = steerability(partial_trace(v, {"A", "B2"}), {"B2"}, {"A"});
    rec.gap = rec.g_joint - rec.g_b1 - rec.g_b2;
    return rec;
}

// CSV serialization: name,trials,failures,worst_margin,worst_seed_stream,elapsed_s
inline std::string reports_to_csv(const std::vector<PropertyReport>& reports) {
    std::string out = "name,trials,failures,worst_margin,worst_seed_stream,elapsed_s\n";
    char line[256];
    for (const PropertyReport& r : reports) {
        std::snprintf(line, sizeof(line), "%s,%d,%d,%.17g,%llu,%.6f\n", r.name.c_str(), r.trials,
                      r.failures, r.worst_margin,
                      static_cast<unsigned long long>(r.worst_seed_stream), r.elapsed_s);
        out += line;
    }
    return out;
}

}  // namespace schurcm
