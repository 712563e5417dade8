#include "revpref/bayesian.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace revpref {

namespace {

void check_index(Index i, Index n, const char* what) {
    if (i < 0 || i >= n)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " out of range [0, " +
                                std::to_string(n) + ")");
}

}  // namespace

double expected_utility(const BayesInstance& inst, Index strategy, Index payoff) {
    check_index(strategy, inst.size(), "strategy");
    return expected_utility(inst, inst.strategies[strategy], payoff);
}

double expected_utility(const BayesInstance& inst, const MatrixXd& kernel, Index payoff) {
    check_index(payoff, static_cast<Index>(inst.payoffs.size()), "payoff");
    if (kernel.rows() != inst.states()) throw std::invalid_argument("kernel has the wrong number of states");
    return expected_utility(inst.prior, kernel, inst.payoffs[payoff]);
}

ActionPolicy optimal_policy(const VectorXd& prior, const MatrixXd& kernel, const MatrixXd& payoff) {
    const MatrixXd scores = action_scores(prior, kernel, payoff);
    ActionPolicy policy(scores.rows());
    for (Index y = 0; y < scores.rows(); ++y) {
        Index best = 0;
        for (Index a = 1; a < scores.cols(); ++a)
            if (scores(y, a) > scores(y, best)) best = a;
        policy[y] = best;
    }
    return policy;
}

ActionPolicy optimal_policy(const BayesInstance& inst, Index strategy, Index payoff) {
    check_index(strategy, inst.size(), "strategy");
    check_index(payoff, static_cast<Index>(inst.payoffs.size()), "payoff");
    return optimal_policy(inst.prior, inst.strategies[strategy], inst.payoffs[payoff]);
}

double policy_value(const VectorXd& prior, const MatrixXd& kernel, const MatrixXd& payoff, const ActionPolicy& policy) {
    const MatrixXd scores = action_scores(prior, kernel, payoff);
    double total = 0;
    for (Index y = 0; y < scores.rows(); ++y) total += scores(y, policy.at(y));
    return total;
}

NiasReport check_nias(const BayesInstance& inst, Index strategy, const ActionPolicy& policy, double tol) {
    check_index(strategy, inst.size(), "strategy");
    const MatrixXd& kernel = inst.strategies[strategy];
    if (static_cast<Index>(policy.size()) != kernel.cols())
        throw std::invalid_argument("policy must assign an action to every observation");
    const MatrixXd scores = action_scores(inst.prior, kernel, inst.payoffs[strategy]);
    const VectorXd marginal = kernel.transpose() * inst.prior;

    NiasReport rep;
    for (Index y = 0; y < scores.rows(); ++y) {
        if (marginal(y) <= 0) continue;
        check_index(policy[y], scores.cols(), "action");
        for (Index a = 0; a < scores.cols(); ++a) {
            const double gain = scores(y, a) - scores(y, policy[y]);
            if (gain > rep.worst_gain) {
                rep.worst_gain = gain;
                rep.observation = y;
                rep.action = a;
            }
        }
    }
    rep.holds = rep.worst_gain <= tol;
    return rep;
}

MatrixXd j_matrix(const BayesInstance& inst) {
    const Index k_count = inst.size();
    MatrixXd jmat(k_count, k_count);
    for (Index k = 0; k < k_count; ++k)
        for (Index j = 0; j < k_count; ++j) jmat(k, j) = expected_utility(inst.prior, inst.strategies[j], inst.payoffs[k]);
    return jmat;
}

namespace {

void check_square(const MatrixXd& jmat) {
    if (jmat.rows() == 0 || jmat.rows() != jmat.cols()) throw std::invalid_argument("J matrix must be K x K");
    if (!jmat.allFinite()) throw std::invalid_argument("J matrix has non-finite entries");
}

}  // namespace

std::optional<BrpCertificate> brp_feasibility(const MatrixXd& jmat) {
    check_square(jmat);
    const Index n = jmat.rows();
    // Variables: c_0..c_{K-1} (>= 0), lambda_0..lambda_{K-1} (>= 1).
    LinearSystem sys(2 * n);
    sys.lower.tail(n).setOnes();
    for (Index k = 0; k < n; ++k) {
        for (Index j = 0; j < n; ++j) {
            if (j == k) continue;
            VectorXd row = VectorXd::Zero(2 * n);
            row(j) = 1.0;
            row(k) = -1.0;
            row(n + k) = jmat(k, k) - jmat(k, j);
            sys.add_row(row, Relation::GreaterEqual, 0.0);
        }
    }
    const FeasibilityOutcome res = solve_feasibility(sys);
    if (!res.feasible) return std::nullopt;
    return BrpCertificate{res.point.head(n), res.point.tail(n)};
}

std::optional<BrpCertificate> brp_feasibility_unit_lambda(const MatrixXd& jmat) {
    check_square(jmat);
    const Index n = jmat.rows();
    LinearSystem sys(n);
    for (Index k = 0; k < n; ++k) {
        for (Index j = 0; j < n; ++j) {
            if (j == k) continue;
            VectorXd row = VectorXd::Zero(n);
            row(j) = 1.0;
            row(k) = -1.0;
            sys.add_row(row, Relation::GreaterEqual, jmat(k, j) - jmat(k, k));
        }
    }
    const FeasibilityOutcome res = solve_feasibility(sys);
    if (!res.feasible) return std::nullopt;
    return BrpCertificate{res.point, VectorXd::Ones(n)};
}

double brp_min_slack(const BrpCertificate& cert, const MatrixXd& jmat) {
    double worst = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < jmat.rows(); ++k)
        for (Index j = 0; j < jmat.cols(); ++j)
            worst = std::min(worst, cert.costs(j) - cert.costs(k) - cert.multipliers(k) * (jmat(k, j) - jmat(k, k)));
    return worst;
}

double niac_cycle_weight(const MatrixXd& jmat, const std::vector<Index>& cycle) {
    double total = 0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const Index k = cycle[i];
        const Index next = cycle[(i + 1) % cycle.size()];
        total += jmat(k, k) - jmat(k, next);
    }
    return total;
}

namespace {

// Cycle in the predecessor graph reachable from `start`, in edge order.
std::vector<Index> predecessor_cycle(const std::vector<Index>& pred, Index start) {
    const Index n = static_cast<Index>(pred.size());
    Index v = start;
    for (Index step = 0; step < n && v >= 0; ++step) v = pred[v];
    if (v < 0) return {};
    // v now lies on a cycle if one is reachable.
    std::vector<Index> rev;
    Index u = v;
    do {
        rev.push_back(u);
        u = pred[u];
    } while (u != v && u >= 0 && static_cast<Index>(rev.size()) <= n);
    if (u != v) return {};
    // pred points backwards along edges, so reverse to get k -> next order.
    return {rev.rbegin(), rev.rend()};
}

}  // namespace

NiacReport check_niac_cycles(const MatrixXd& jmat, double tol) {
    check_square(jmat);
    const Index n = jmat.rows();
    NiacReport rep;
    if (n == 1) return rep;

    const double eps = tol / static_cast<double>(n);
    VectorXd dist = VectorXd::Zero(n);
    std::vector<Index> pred(n, -1);
    const Index max_rounds = n * n + n;
    for (Index round = 0; round < max_rounds; ++round) {
        bool relaxed = false;
        for (Index k = 0; k < n; ++k) {
            for (Index j = 0; j < n; ++j) {
                if (j == k) continue;
                const double w = jmat(k, k) - jmat(k, j);
                if (dist(k) + w < dist(j) - eps) {
                    dist(j) = dist(k) + w;
                    pred[j] = k;
                    relaxed = true;
                }
            }
        }
        if (!relaxed) return rep;
        if (round + 1 < n) continue;
        for (Index v = 0; v < n; ++v) {
            std::vector<Index> cycle = predecessor_cycle(pred, v);
            if (cycle.empty()) continue;
            // Rotate so the cycle starts at its smallest index.
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
            rep.holds = false;
            rep.cycle = std::move(cycle);
            rep.cycle_weight = niac_cycle_weight(jmat, rep.cycle);
            return rep;
        }
    }
    throw std::logic_error("negative-cycle search did not settle");
}

InfoCost::InfoCost(const BrpCertificate& cert, const VectorXd& anchors, VectorXd prior, std::vector<MatrixXd> payoffs)
    : offsets_(cert.costs),
      multipliers_(cert.multipliers),
      anchors_(anchors),
      prior_(std::move(prior)),
      payoffs_(std::move(payoffs)) {
    if (offsets_.size() != multipliers_.size() || offsets_.size() != anchors_.size() ||
        offsets_.size() != static_cast<Index>(payoffs_.size()))
        throw std::invalid_argument("information cost pieces have inconsistent sizes");
}

VectorXd InfoCost::pieces(const VectorXd& evals) const {
    return offsets_ + multipliers_.cwiseProduct(evals - anchors_);
}

VectorXd InfoCost::utility_evals(const MatrixXd& kernel) const {
    VectorXd evals(size());
    for (Index k = 0; k < size(); ++k) evals(k) = expected_utility(prior_, kernel, payoffs_[k]);
    return evals;
}

InfoCost InfoCost::with_normalizer(double normalizer) const {
    InfoCost out = *this;
    out.normalizer_ = normalizer;
    return out;
}

InfoCost reconstruct_info_cost(const BrpCertificate& cert, const MatrixXd& jmat, const BayesInstance& inst) {
    check_square(jmat);
    if (cert.costs.size() != jmat.rows() || inst.size() != jmat.rows())
        throw std::invalid_argument("certificate, J matrix and instance disagree on K");
    return InfoCost(cert, jmat.diagonal(), inst.prior, inst.payoffs);
}

MatrixXd uniform_kernel(Index states, Index observations) {
    return MatrixXd::Constant(states, observations, 1.0 / static_cast<double>(observations));
}

InfoCost normalize_cost(const InfoCost& cost, const BayesInstance& inst) {
    const MatrixXd a0 = uniform_kernel(inst.states(), inst.observations());
    const InfoCost raw = cost.with_normalizer(0.0);
    return cost.with_normalizer(raw(a0));
}

VectorXd rockafellar_offsets(const MatrixXd& jmat) {
    check_square(jmat);
    const Index n = jmat.rows();
    if (n > kMaxChainExperiments)
        throw InstanceTooLarge("chain enumeration supports at most " + std::to_string(kMaxChainExperiments) +
                               " experiments, got " + std::to_string(n));
    if (const NiacReport niac = check_niac_cycles(jmat); !niac.holds)
        throw UnboundedCost("standard NIAC fails (cycle weight " + std::to_string(niac.cycle_weight) +
                            "), the chain supremum is unbounded");

    const double minus_inf = -std::numeric_limits<double>::infinity();
    const std::size_t states = std::size_t{1} << n;
    // best[mask * n + last]: best chain over the set `mask` ending at `last`.
    std::vector<double> best(states * static_cast<std::size_t>(n), minus_inf);
    for (Index k = 0; k < n; ++k) best[(std::size_t{1} << k) * n + k] = 0.0;

    VectorXd offsets = VectorXd::Constant(n, minus_inf);
    for (std::size_t mask = 1; mask < states; ++mask) {
        for (Index last = 0; last < n; ++last) {
            const double value = best[mask * n + last];
            if (value == minus_inf) continue;
            offsets(last) = std::max(offsets(last), value);
            for (Index next = 0; next < n; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const std::size_t to = (mask | (std::size_t{1} << next)) * n + next;
                best[to] = std::max(best[to], value + jmat(last, next) - jmat(last, last));
            }
        }
    }
    return offsets;
}

double rockafellar_cost(const MatrixXd& jmat, const VectorXd& target_evals) {
    const VectorXd offsets = rockafellar_offsets(jmat);
    if (target_evals.size() != jmat.rows()) throw std::invalid_argument("target evaluations must have K entries");
    return (offsets + target_evals - jmat.diagonal()).maxCoeff();
}

double rockafellar_cost(const MatrixXd& jmat, Index target) {
    check_index(target, jmat.cols(), "target");
    return rockafellar_cost(jmat, VectorXd(jmat.col(target)));
}

double rockafellar_cost(const MatrixXd& jmat, const BayesInstance& inst, const MatrixXd& kernel) {
    VectorXd evals(inst.size());
    for (Index k = 0; k < inst.size(); ++k) evals(k) = expected_utility(inst, kernel, k);
    return rockafellar_cost(jmat, evals);
}

}  // namespace revpref
