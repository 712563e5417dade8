#ifndef REVPREF_SYNTH_HPP
#define REVPREF_SYNTH_HPP

#include "revpref/datasets.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace revpref {

enum class Family { CobbDouglasLinearBudget, GarblingGridRational, NiacViolation };

struct GeneratorConfig {
    std::uint64_t seed = 0;
    Index experiments = 4;  // K
    Index goods = 2;        // m, classical only
    Index states = 3;
    Index observations = 3;
    Index actions = 3;
    Family family = Family::GarblingGridRational;

    /// Number of candidate strategies (20..200), including the base
    /// kernel and the uninformative one.
    Index grid_size = 40;
    /// Multiplier on mutual information in the ground-truth cost.
    double cost_scale = 0.5;
    /// Multipliers lambda_k are drawn uniformly from [1, lambda_max].
    double lambda_max = 3.0;
};

/// Cobb-Douglas demand under K random linear budgets p_k . b <= 1, lowered
/// to budget_evals(k, j) = p_k . b_j - 1.
ClassicalInstance gen_classical(const GeneratorConfig& config);

/// Ground truth behind a generated rational attention dataset.
struct RationalBayes {
    BayesInstance instance;
    std::vector<MatrixXd> grid;      // candidate strategies, grid[0] is the base kernel
    std::vector<Index> choices;      // grid index chosen by each experiment
    VectorXd multipliers;            // lambda_k
    VectorXd costs;                  // ground-truth cost at each chosen strategy
};

/// Each experiment picks, from a grid of garblings of one base kernel, the
/// strategy maximizing lambda_k J(a, U_k) - cost_scale * I(a), where I is
/// the mutual information between state and observation. Ties within
/// 1e-12 go to the lowest grid index.
RationalBayes gen_bayes_rational_detailed(const GeneratorConfig& config);
BayesInstance gen_bayes_rational(const GeneratorConfig& config);

class NoViolationFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kPerturbationBudget = 64;

/// Swaps pairs of strategies (then degrades single strategies by a strong
/// garbling) in a seeded order until the generalized NIAC system becomes
/// infeasible. Throws NoViolationFound when the budget runs out.
BayesInstance perturb_violation(const BayesInstance& inst, std::uint64_t seed);

/// A rational instance followed by perturb_violation, retrying successive
/// seeds (at most 32) when a draw cannot be perturbed.
BayesInstance gen_niac_violation(const GeneratorConfig& config);

/// Mutual information (nats) between state and observation.
double mutual_information(const VectorXd& prior, const MatrixXd& kernel);

}  // namespace revpref

#endif  // REVPREF_SYNTH_HPP
