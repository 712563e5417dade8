#ifndef REVPREF_BLACKWELL_HPP
#define REVPREF_BLACKWELL_HPP

#include "revpref/lp_core.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace revpref {

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Row-stochastic Q with alpha * Q == alpha_bar.
struct GarblingWitness {
    Eigen::MatrixXd garbling;
};

/// Decides whether `alpha` Blackwell-dominates `alpha_bar`, i.e. whether a
/// row-stochastic Q with alpha * Q = alpha_bar exists (entrywise within
/// feas_tol). Both kernels are states x observations and must be
/// row-stochastic with matching shapes.
std::optional<GarblingWitness> check_dominance(const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& alpha_bar,
                                               double feas_tol = kFeasTol);

/// Random row-stochastic matrix whose rows are Dirichlet(concentration).
template <typename Rng>
Eigen::MatrixXd random_stochastic(Eigen::Index rows, Eigen::Index cols, Rng& rng, double concentration = 1.0) {
    std::gamma_distribution<double> gamma(concentration, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        double sum = 0;
        for (Eigen::Index j = 0; j < cols; ++j) sum += (m(i, j) = gamma(rng) + 1e-12);
        m.row(i) /= sum;
    }
    return m;
}

struct Garbling {
    Eigen::MatrixXd garbled;   // alpha * Q
    Eigen::MatrixXd garbling;  // Q
};

/// Garbles `alpha` by a random row-stochastic Q (uniform Dirichlet rows).
Garbling random_garbling(const Eigen::MatrixXd& alpha, std::uint64_t seed);

/// Largest deviation of a matrix's rows from summing to one, or of its
/// entries from nonnegativity.
double stochastic_defect(const Eigen::MatrixXd& m);

}  // namespace revpref

#endif  // REVPREF_BLACKWELL_HPP
