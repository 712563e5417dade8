#include "revpref/synth.hpp"

#include "revpref/bayesian.hpp"
#include "revpref/blackwell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace revpref {

namespace {

void require_positive(Index v, const char* name) {
    if (v <= 0) throw std::invalid_argument(std::string(name) + " must be positive");
}

VectorXd dirichlet(Index n, double concentration, std::mt19937_64& rng) {
    return random_stochastic(1, n, rng, concentration).row(0).transpose();
}

}  // namespace

double mutual_information(const VectorXd& prior, const MatrixXd& kernel) {
    const VectorXd marginal = kernel.transpose() * prior;
    double mi = 0;
    for (Index x = 0; x < kernel.rows(); ++x) {
        if (prior(x) <= 0) continue;
        for (Index y = 0; y < kernel.cols(); ++y) {
            const double p = kernel(x, y);
            if (p > 0 && marginal(y) > 0) mi += prior(x) * p * std::log(p / marginal(y));
        }
    }
    return std::max(0.0, mi);
}

ClassicalInstance gen_classical(const GeneratorConfig& config) {
    require_positive(config.experiments, "experiments");
    require_positive(config.goods, "goods");
    std::mt19937_64 rng(config.seed);
    const Index k_count = config.experiments, m = config.goods;

    const VectorXd exponents = dirichlet(m, 1.0, rng);
    std::uniform_real_distribution<double> price(0.5, 2.0);
    MatrixXd prices(k_count, m);
    for (Index k = 0; k < k_count; ++k)
        for (Index j = 0; j < m; ++j) prices(k, j) = price(rng);

    ClassicalInstance inst;
    // Cobb-Douglas demand on p . b = 1 spends the share a_j on good j.
    inst.bundles = (prices.cwiseInverse().array().rowwise() * exponents.transpose().array()).matrix();
    inst.budget_evals = (prices * inst.bundles.transpose()).array() - 1.0;
    inst.budget_evals.diagonal().setZero();
    return inst;
}

RationalBayes gen_bayes_rational_detailed(const GeneratorConfig& config) {
    require_positive(config.experiments, "experiments");
    require_positive(config.states, "states");
    require_positive(config.observations, "observations");
    require_positive(config.actions, "actions");
    if (config.grid_size < 2) throw std::invalid_argument("grid_size must be at least 2");
    if (config.cost_scale < 0) throw std::invalid_argument("cost_scale must be nonnegative");
    if (config.lambda_max < 1) throw std::invalid_argument("lambda_max must be at least 1");

    std::mt19937_64 rng(config.seed);
    const Index nx = config.states, ny = config.observations, na = config.actions, k_count = config.experiments;

    RationalBayes out;
    BayesInstance& inst = out.instance;
    inst.prior = dirichlet(nx, 2.0, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<Index> action_pick(0, na - 1);
    for (Index k = 0; k < k_count; ++k) {
        // Noise plus a bonus for one state-specific action, so that each
        // experiment values its own distinctions between states.
        MatrixXd u(nx, na);
        for (Index x = 0; x < nx; ++x)
            for (Index a = 0; a < na; ++a) u(x, a) = unit(rng);
        for (Index x = 0; x < nx; ++x) u(x, action_pick(rng)) += 1.0;
        inst.payoffs.push_back(std::move(u));
    }
    out.multipliers.resize(k_count);
    std::uniform_real_distribution<double> lambda(1.0, config.lambda_max);
    for (Index k = 0; k < k_count; ++k) out.multipliers(k) = config.lambda_max > 1.0 ? lambda(rng) : 1.0;

    // Base kernel: a noisy assignment of states to distinct observations
    // (shared when there are fewer observations than states).
    std::vector<Index> labels(static_cast<std::size_t>(ny));
    for (Index y = 0; y < ny; ++y) labels[static_cast<std::size_t>(y)] = y;
    std::shuffle(labels.begin(), labels.end(), rng);
    MatrixXd base = 0.15 * random_stochastic(nx, ny, rng, 1.0);
    for (Index x = 0; x < nx; ++x) base(x, labels[static_cast<std::size_t>(x % ny)]) += 0.85;
    out.grid.push_back(base);
    out.grid.push_back(uniform_kernel(nx, ny));
    std::uniform_int_distribution<Index> obs_pick(0, ny - 1);
    std::uniform_real_distribution<double> noise(0.0, 0.5);
    while (static_cast<Index>(out.grid.size()) < config.grid_size) {
        // Parents exclude the uninformative kernel, which garbles to itself.
        std::uniform_int_distribution<std::size_t> parent_pick(0, out.grid.size() - 1);
        std::size_t parent = parent_pick(rng);
        if (parent == 1) parent = 0;
        // Garbling = a random merge of observations (or the identity),
        // blended with a dense random garbling.
        MatrixXd merge = MatrixXd::Identity(ny, ny);
        if (unit(rng) < 0.5) {
            merge.setZero();
            for (Index y = 0; y < ny; ++y) merge(y, obs_pick(rng)) = 1.0;
        }
        const double eps = noise(rng);
        const MatrixXd q = (1.0 - eps) * merge + eps * random_stochastic(ny, ny, rng, 1.0);
        out.grid.push_back(out.grid[parent] * q);
    }

    std::vector<double> info_cost;
    for (const auto& g : out.grid) info_cost.push_back(config.cost_scale * mutual_information(inst.prior, g));

    out.costs.resize(k_count);
    for (Index k = 0; k < k_count; ++k) {
        Index best = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < out.grid.size(); ++i) {
            const double score =
                out.multipliers(k) * expected_utility(inst.prior, out.grid[i], inst.payoffs[k]) - info_cost[i];
            if (score > best_score + 1e-12) {
                best_score = score;
                best = static_cast<Index>(i);
            }
        }
        out.choices.push_back(best);
        out.costs(k) = info_cost[best];
        inst.strategies.push_back(out.grid[best]);
    }
    return out;
}

BayesInstance gen_bayes_rational(const GeneratorConfig& config) { return gen_bayes_rational_detailed(config).instance; }

BayesInstance perturb_violation(const BayesInstance& inst, std::uint64_t seed) {
    if (!brp_feasibility(j_matrix(inst))) throw std::invalid_argument("perturb_violation expects a feasible instance");

    std::mt19937_64 rng(seed);
    std::vector<std::pair<Index, Index>> swaps;
    for (Index i = 0; i < inst.size(); ++i)
        for (Index j = i + 1; j < inst.size(); ++j)
            if (!inst.strategies[i].isApprox(inst.strategies[j], 1e-12)) swaps.emplace_back(i, j);
    std::shuffle(swaps.begin(), swaps.end(), rng);

    int trials = 0;
    for (const auto& [i, j] : swaps) {
        if (trials++ >= kPerturbationBudget) break;
        BayesInstance candidate = inst;
        std::swap(candidate.strategies[i], candidate.strategies[j]);
        if (!brp_feasibility(j_matrix(candidate))) return candidate;
    }

    std::vector<Index> order(static_cast<std::size_t>(inst.size()));
    for (Index k = 0; k < inst.size(); ++k) order[static_cast<std::size_t>(k)] = k;
    std::shuffle(order.begin(), order.end(), rng);
    for (Index k : order) {
        if (trials++ >= kPerturbationBudget) break;
        BayesInstance candidate = inst;
        const Index ny = inst.observations();
        const MatrixXd q = 0.1 * MatrixXd::Identity(ny, ny) + 0.9 * random_stochastic(ny, ny, rng, 0.5);
        candidate.strategies[k] = inst.strategies[k] * q;
        if (!brp_feasibility(j_matrix(candidate))) return candidate;
    }
    throw NoViolationFound("no perturbation made the generalized NIAC system infeasible");
}

BayesInstance gen_niac_violation(const GeneratorConfig& config) {
    for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        GeneratorConfig c = config;
        c.seed = config.seed + attempt * 0x9e3779b97f4a7c15ULL;
        const BayesInstance rational = gen_bayes_rational(c);
        try {
            return perturb_violation(rational, c.seed ^ 0x5bd1e995ULL);
        } catch (const NoViolationFound&) {
        }
    }
    throw NoViolationFound("no perturbable rational instance found for this configuration");
}

}  // namespace revpref
