#ifndef REVPREF_BAYESIAN_HPP
#define REVPREF_BAYESIAN_HPP

#include "revpref/datasets.hpp"
#include "revpref/lp_core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

namespace revpref {

/// Joint weights of (observation, action) pairs:
///   scores(y, a) = sum_x prior(x) kernel(x, y) payoff(x, a).
template <typename DerivedP, typename DerivedK, typename DerivedU>
Eigen::Matrix<typename DerivedK::Scalar, Eigen::Dynamic, Eigen::Dynamic>
action_scores(const Eigen::MatrixBase<DerivedP>& prior, const Eigen::MatrixBase<DerivedK>& kernel,
              const Eigen::MatrixBase<DerivedU>& payoff) {
    return kernel.transpose() * prior.asDiagonal() * payoff;
}

/// Expected utility of the best response to each observation:
///   J(kernel, payoff) = sum_y max_a sum_x prior(x) kernel(x, y) payoff(x, a).
template <typename DerivedP, typename DerivedK, typename DerivedU>
typename DerivedK::Scalar expected_utility(const Eigen::MatrixBase<DerivedP>& prior,
                                           const Eigen::MatrixBase<DerivedK>& kernel,
                                           const Eigen::MatrixBase<DerivedU>& payoff) {
    return action_scores(prior, kernel, payoff).rowwise().maxCoeff().sum();
}

double expected_utility(const BayesInstance& inst, Index strategy, Index payoff);
double expected_utility(const BayesInstance& inst, const MatrixXd& kernel, Index payoff);

/// Action chosen after each observation; ties go to the lowest action index.
using ActionPolicy = std::vector<Index>;

ActionPolicy optimal_policy(const VectorXd& prior, const MatrixXd& kernel, const MatrixXd& payoff);
ActionPolicy optimal_policy(const BayesInstance& inst, Index strategy, Index payoff);

/// Expected utility earned by following a fixed policy.
double policy_value(const VectorXd& prior, const MatrixXd& kernel, const MatrixXd& payoff, const ActionPolicy& policy);

struct NiasReport {
    bool holds = true;
    double worst_gain = 0;  // largest joint-weighted gain of a deviation
    Index observation = -1;
    Index action = -1;
};

/// No improving action switches: for every observation with positive
/// probability, no action beats policy[y] by more than tol in
/// prior-and-kernel weighted payoff. Unreachable observations are skipped.
NiasReport check_nias(const BayesInstance& inst, Index strategy, const ActionPolicy& policy, double tol = kVerifyTol);

/// jmat(k, j) = J(strategy j, payoff k).
MatrixXd j_matrix(const BayesInstance& inst);

/// Costs c >= 0 and multipliers lambda >= 1 with
///   c_j - c_k - lambda_k (J(k, j) - J(k, k)) >= 0   for all k, j.
struct BrpCertificate {
    VectorXd costs;
    VectorXd multipliers;
};

std::optional<BrpCertificate> brp_feasibility(const MatrixXd& jmat);

/// The same system with every multiplier fixed to one.
std::optional<BrpCertificate> brp_feasibility_unit_lambda(const MatrixXd& jmat);

/// Smallest slack c_j - c_k - lambda_k (J(k, j) - J(k, k)) over all pairs.
double brp_min_slack(const BrpCertificate& cert, const MatrixXd& jmat);

struct NiacReport {
    bool holds = true;
    /// Experiments k_1 -> k_2 -> ... -> k_m (cycle closes back to k_1).
    std::vector<Index> cycle;
    /// sum_i J(k_i, k_i) - J(k_i, k_{i+1}); negative on a violation.
    double cycle_weight = 0;
};

/// Standard NIAC: no cycle has total weight below -tol, where edge k -> j
/// weighs J(k, k) - J(k, j). Uses Bellman-Ford from a virtual source.
NiacReport check_niac_cycles(const MatrixXd& jmat, double tol = kVerifyTol);

/// Total weight of a closed cycle of experiment indices.
double niac_cycle_weight(const MatrixXd& jmat, const std::vector<Index>& cycle);

/// Piecewise-max information cost
///   C(a) = max_k { c_k + lambda_k (J(a, U_k) - J(a_k, U_k)) } - normalizer.
class InfoCost {
public:
    InfoCost(const BrpCertificate& cert, const VectorXd& anchors, VectorXd prior, std::vector<MatrixXd> payoffs);

    /// Piece values before the max, given evals(k) = J(a, U_k).
    VectorXd pieces(const VectorXd& evals) const;

    double from_evals(const VectorXd& evals) const { return pieces(evals).maxCoeff() - normalizer_; }

    /// J(kernel, U_k) for every experiment k.
    VectorXd utility_evals(const MatrixXd& kernel) const;

    double operator()(const MatrixXd& kernel) const { return from_evals(utility_evals(kernel)); }

    const VectorXd& offsets() const { return offsets_; }
    const VectorXd& multipliers() const { return multipliers_; }
    const VectorXd& anchors() const { return anchors_; }
    double normalizer() const { return normalizer_; }
    Index size() const { return offsets_.size(); }

    InfoCost with_normalizer(double normalizer) const;

private:
    VectorXd offsets_;
    VectorXd multipliers_;
    VectorXd anchors_;  // J(a_k, U_k)
    VectorXd prior_;
    std::vector<MatrixXd> payoffs_;
    double normalizer_ = 0;
};

InfoCost reconstruct_info_cost(const BrpCertificate& cert, const MatrixXd& jmat, const BayesInstance& inst);

/// The uninformative strategy a_0(y | x) = 1 / |Y|.
MatrixXd uniform_kernel(Index states, Index observations);

/// Shifts the cost so that it vanishes at the uninformative strategy.
InfoCost normalize_cost(const InfoCost& cost, const BayesInstance& inst);

class InstanceTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnboundedCost : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr Index kMaxChainExperiments = 12;

/// Chain-supremum cost: the largest value of
///   sum_{i<m} (J(k_i, k_{i+1}) - J(k_i, k_i)) + (target_evals(k_m) - J(k_m, k_m))
/// over ordered chains of distinct experiments, with target_evals(k) =
/// J(target, U_k). Dynamic programming over visited subsets.
double rockafellar_cost(const MatrixXd& jmat, const VectorXd& target_evals);

/// Best chain value ending at each experiment, before the final term; the
/// chain cost is max_m { offsets(m) + target_evals(m) - J(m, m) }.
VectorXd rockafellar_offsets(const MatrixXd& jmat);
double rockafellar_cost(const MatrixXd& jmat, Index target);
double rockafellar_cost(const MatrixXd& jmat, const BayesInstance& inst, const MatrixXd& kernel);

}  // namespace revpref

#endif  // REVPREF_BAYESIAN_HPP
