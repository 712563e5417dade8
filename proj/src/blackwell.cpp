#include "revpref/blackwell.hpp"

#include <string>

namespace revpref {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void require_kernel(const MatrixXd& k, const char* name) {
    if (k.rows() == 0 || k.cols() == 0) throw DimensionMismatch(std::string(name) + " is empty");
    if (!k.allFinite()) throw DimensionMismatch(std::string(name) + " has non-finite entries");
    if (stochastic_defect(k) > 1e-9) throw DimensionMismatch(std::string(name) + " is not row-stochastic");
}

}  // namespace

double stochastic_defect(const MatrixXd& m) {
    const double row_err = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double neg = std::max(0.0, -m.minCoeff());
    return std::max(row_err, neg);
}

std::optional<GarblingWitness> check_dominance(const MatrixXd& alpha, const MatrixXd& alpha_bar, double feas_tol) {
    if (alpha.rows() != alpha_bar.rows() || alpha.cols() != alpha_bar.cols())
        throw DimensionMismatch("kernels must share the same states x observations shape");
    require_kernel(alpha, "alpha");
    require_kernel(alpha_bar, "alpha_bar");

    const Index nx = alpha.rows(), ny = alpha.cols();
    // Variable q(y, z) lives at index y * ny + z.
    LinearSystem sys(ny * ny);
    for (Index y = 0; y < ny; ++y) {
        VectorXd row = VectorXd::Zero(ny * ny);
        row.segment(y * ny, ny).setOnes();
        sys.add_row(row, Relation::Equal, 1.0);
    }
    for (Index x = 0; x < nx; ++x) {
        for (Index z = 0; z < ny; ++z) {
            VectorXd row = VectorXd::Zero(ny * ny);
            for (Index y = 0; y < ny; ++y) row(y * ny + z) = alpha(x, y);
            sys.add_row(row, Relation::LessEqual, alpha_bar(x, z) + feas_tol);
            sys.add_row(row, Relation::GreaterEqual, alpha_bar(x, z) - feas_tol);
        }
    }
    const FeasibilityOutcome res = solve_feasibility(sys, feas_tol);
    if (!res.feasible) return std::nullopt;

    MatrixXd q(ny, ny);
    for (Index y = 0; y < ny; ++y)
        for (Index z = 0; z < ny; ++z) q(y, z) = std::max(0.0, res.point(y * ny + z));
    return GarblingWitness{q};
}

Garbling random_garbling(const MatrixXd& alpha, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    MatrixXd q = random_stochastic(alpha.cols(), alpha.cols(), rng, 1.0);
    return Garbling{alpha * q, q};
}

}  // namespace revpref
