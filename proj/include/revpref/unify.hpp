#ifndef REVPREF_UNIFY_HPP
#define REVPREF_UNIFY_HPP

#include "revpref/bayesian.hpp"
#include "revpref/classical.hpp"
#include "revpref/datasets.hpp"
#include "revpref/garp.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace revpref {

/// Known-utility consumption data induced by attention data: bundle k is
/// strategy k and u_t(b) = J(b, U_t). Bundles are the strategies
/// flattened row-major; the evaluator accepts any kernel.
CrpInstance map_to_crp(const BayesInstance& inst);

struct UnificationReport {
    bool brp_verdict = false;
    bool crp_verdict = false;
    bool verdict_match = false;
    std::optional<BrpCertificate> certificate;
    /// Min slack of the BRP certificate replayed on the mapped CRP system,
    /// and of the CRP certificate replayed on the BRP system.
    double brp_to_crp_slack = 0;
    double crp_to_brp_slack = 0;
    /// (C(a_k), g(b_k)) reconstructed from the same certificate.
    std::vector<std::pair<double, double>> cost_values_at_data;
    double max_cost_discrepancy = 0;
};

UnificationReport verify_equivalence(const BayesInstance& inst);

/// GARP on afford(k, j) = J(k, k) - J(k, j).
GarpReport garp_on_mapped(const BayesInstance& inst);

struct AuditStat {
    Index samples = 0;
    Index violations = 0;
    double worst_margin = -std::numeric_limits<double>::infinity();
};

struct AxiomAuditReport {
    AuditStat k1;  // C(aQ) <= C(a)
    AuditStat k2;  // C(t e + (1 - t) p) <= t C(e) + (1 - t) C(p)
    double k3_value = 0;  // C(a_0)

    bool passed(double k3_tol = 1e-12) const {
        return k1.violations == 0 && k2.violations == 0 && std::abs(k3_value) <= k3_tol;
    }
};

using KernelCost = std::function<double(const MatrixXd&)>;

inline constexpr double kAxiomTol = 1e-9;

/// Sampled audit of weak monotonicity under garbling (K1), mixture
/// feasibility (K2) and normalization (K3) for any cost over kernels.
/// Each sample draws from its own RNG stream derived from `seed`.
AxiomAuditReport audit_cost_axioms(const KernelCost& cost, const BayesInstance& inst, Index samples,
                                   std::uint64_t seed, double tol = kAxiomTol);

AxiomAuditReport audit_axioms(const InfoCost& cost, const BayesInstance& inst, Index samples = 1000,
                              std::uint64_t seed = 0, double tol = kAxiomTol);

/// Replays lambda_k J(a, U_k) - C(a) <= lambda_k J(a_k, U_k) - C(a_k) on
/// random kernels a, for every experiment k.
AuditStat audit_rationalization(const InfoCost& cost, const BayesInstance& inst, Index samples,
                                std::uint64_t seed, double tol = kVerifyTol);

/// Random kernel with a randomly drawn Dirichlet concentration, so samples
/// range from nearly deterministic to nearly uninformative.
MatrixXd sample_kernel(Index states, Index observations, std::uint64_t seed, std::uint64_t stream);

}  // namespace revpref

#endif  // REVPREF_UNIFY_HPP
