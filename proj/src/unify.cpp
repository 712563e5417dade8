#include "revpref/unify.hpp"

#include "revpref/blackwell.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace revpref {

namespace {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

MatrixXd flatten_strategies(const BayesInstance& inst) {
    MatrixXd out(inst.size(), inst.states() * inst.observations());
    for (Index k = 0; k < inst.size(); ++k)
        for (Index x = 0; x < inst.states(); ++x)
            out.row(k).segment(x * inst.observations(), inst.observations()) = inst.strategies[k].row(x);
    return out;
}

}  // namespace

MatrixXd sample_kernel(Index states, Index observations, std::uint64_t seed, std::uint64_t stream) {
    auto rng = stream_rng(seed, stream);
    static constexpr double kConcentrations[] = {0.1, 0.5, 1.0, 3.0, 20.0};
    std::uniform_int_distribution<int> pick(0, 4);
    return random_stochastic(states, observations, rng, kConcentrations[pick(rng)]);
}

CrpInstance map_to_crp(const BayesInstance& inst) {
    CrpInstance out;
    out.utility_evals = j_matrix(inst);
    out.bundles = flatten_strategies(inst);
    out.evaluator = [prior = inst.prior, payoffs = inst.payoffs](const MatrixXd& kernel) {
        VectorXd evals(static_cast<Index>(payoffs.size()));
        for (std::size_t k = 0; k < payoffs.size(); ++k)
            evals(static_cast<Index>(k)) = expected_utility(prior, kernel, payoffs[k]);
        return evals;
    };
    return out;
}

UnificationReport verify_equivalence(const BayesInstance& inst) {
    const MatrixXd jmat = j_matrix(inst);
    const CrpInstance mapped = map_to_crp(inst);

    UnificationReport rep;
    const auto brp = brp_feasibility(jmat);
    const auto crp = crp_feasibility(mapped);
    rep.brp_verdict = brp.has_value();
    rep.crp_verdict = crp.has_value();
    rep.verdict_match = rep.brp_verdict == rep.crp_verdict;
    rep.certificate = brp;

    if (brp) rep.brp_to_crp_slack = crp_min_slack(CrpCertificate{brp->costs, brp->multipliers}, mapped.utility_evals);
    if (crp) rep.crp_to_brp_slack = brp_min_slack(BrpCertificate{crp->values, crp->multipliers}, jmat);

    if (brp) {
        const InfoCost info = reconstruct_info_cost(*brp, jmat, inst);
        const CrpCertificate shared{brp->costs, brp->multipliers};
        const VectorXd diag = mapped.utility_evals.diagonal();
        for (Index k = 0; k < inst.size(); ++k) {
            const double bayes_side = info(inst.strategies[k]);
            const double classical_side =
                reconstruct_budget_cost(shared, mapped.evaluator(inst.strategies[k]), diag);
            rep.cost_values_at_data.emplace_back(bayes_side, classical_side);
            rep.max_cost_discrepancy = std::max(rep.max_cost_discrepancy, std::abs(bayes_side - classical_side));
        }
    }
    return rep;
}

GarpReport garp_on_mapped(const BayesInstance& inst) { return check_garp(crp_affordability(j_matrix(inst))); }

AxiomAuditReport audit_cost_axioms(const KernelCost& cost, const BayesInstance& inst, Index samples,
                                   std::uint64_t seed, double tol) {
    const Index nx = inst.states(), ny = inst.observations();
    AxiomAuditReport rep;

    for (Index i = 0; i < samples; ++i) {
        // Every fourth sample starts from an observed strategy.
        const MatrixXd alpha = (i % 4 == 0 && inst.size() > 0)
                                   ? inst.strategies[static_cast<std::size_t>((i / 4) % inst.size())]
                                   : sample_kernel(nx, ny, seed, 2 * static_cast<std::uint64_t>(i));
        const Garbling g = random_garbling(alpha, seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
        const double margin = cost(g.garbled) - cost(alpha);
        ++rep.k1.samples;
        rep.k1.worst_margin = std::max(rep.k1.worst_margin, margin);
        if (margin > tol) ++rep.k1.violations;
    }

    for (Index i = 0; i < samples; ++i) {
        auto rng = stream_rng(seed, 2 * static_cast<std::uint64_t>(i) + 1);
        const MatrixXd eta = sample_kernel(nx, ny, seed, 2 * static_cast<std::uint64_t>(samples + i));
        const MatrixXd psi = sample_kernel(nx, ny, seed, 2 * static_cast<std::uint64_t>(samples + i) + 1);
        const double theta = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        const MatrixXd mix = theta * eta + (1.0 - theta) * psi;
        const double margin = cost(mix) - (theta * cost(eta) + (1.0 - theta) * cost(psi));
        ++rep.k2.samples;
        rep.k2.worst_margin = std::max(rep.k2.worst_margin, margin);
        if (margin > tol) ++rep.k2.violations;
    }

    rep.k3_value = cost(uniform_kernel(nx, ny));
    return rep;
}

AxiomAuditReport audit_axioms(const InfoCost& cost, const BayesInstance& inst, Index samples, std::uint64_t seed,
                              double tol) {
    return audit_cost_axioms([&cost](const MatrixXd& a) { return cost(a); }, inst, samples, seed, tol);
}

AuditStat audit_rationalization(const InfoCost& cost, const BayesInstance& inst, Index samples, std::uint64_t seed,
                                double tol) {
    AuditStat stat;
    VectorXd at_data(inst.size());
    for (Index k = 0; k < inst.size(); ++k) {
        const MatrixXd& a_k = inst.strategies[k];
        at_data(k) = cost.multipliers()(k) * expected_utility(inst, a_k, k) - cost(a_k);
    }
    for (Index i = 0; i < samples; ++i) {
        const MatrixXd alpha = sample_kernel(inst.states(), inst.observations(), seed, static_cast<std::uint64_t>(i));
        const VectorXd evals = cost.utility_evals(alpha);
        const double c = cost.from_evals(evals);
        for (Index k = 0; k < inst.size(); ++k) {
            const double margin = cost.multipliers()(k) * evals(k) - c - at_data(k);
            ++stat.samples;
            stat.worst_margin = std::max(stat.worst_margin, margin);
            if (margin > tol) ++stat.violations;
        }
    }
    return stat;
}

}  // namespace revpref
