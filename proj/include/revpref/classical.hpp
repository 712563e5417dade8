#ifndef REVPREF_CLASSICAL_HPP
#define REVPREF_CLASSICAL_HPP

#include "revpref/datasets.hpp"
#include "revpref/lp_core.hpp"

#include <Eigen/Dense>

#include <optional>

namespace revpref {

/// Values u and multipliers lambda solving
///   u_s - u_t - lambda_t * G(t, s) <= 0   for all t != s,
/// with lambda_t >= 1 and the values shifted so that min u = 1.
struct AfriatCertificate {
    VectorXd values;
    VectorXd multipliers;
};

/// Values gbar >= 0 and multipliers lambda >= 1 solving
///   gbar_s - gbar_t - lambda_t * (U(t, s) - U(t, t)) >= 0   for all t, s.
/// Add one to every value when strictly positive thresholds are needed;
/// the system is invariant under a common shift.
struct CrpCertificate {
    VectorXd values;
    VectorXd multipliers;
};

std::optional<AfriatCertificate> afriat_feasibility(const Eigen::MatrixXd& budget_evals);
std::optional<AfriatCertificate> afriat_feasibility(const ClassicalInstance& inst);

/// Largest left-hand side u_s - u_t - lambda_t G(t, s) over t != s; the
/// certificate is valid when this is <= tolerance.
double afriat_max_residual(const AfriatCertificate& cert, const Eigen::MatrixXd& budget_evals);

std::optional<CrpCertificate> crp_feasibility(const Eigen::MatrixXd& utility_evals);
std::optional<CrpCertificate> crp_feasibility(const CrpInstance& inst);

/// Smallest slack gbar_s - gbar_t - lambda_t (U(t, s) - U(t, t)) over all
/// pairs; the certificate is valid when this is >= -tolerance.
double crp_min_slack(const CrpCertificate& cert, const Eigen::MatrixXd& utility_evals);

/// u(b) = min_k { u_k + lambda_k g_k(b) }.
struct PiecewiseUtility {
    VectorXd offsets;
    VectorXd slopes;

    explicit PiecewiseUtility(const AfriatCertificate& cert) : offsets(cert.values), slopes(cert.multipliers) {}

    template <typename Derived>
    double operator()(const Eigen::MatrixBase<Derived>& g_evals) const {
        return (offsets + slopes.cwiseProduct(g_evals)).minCoeff();
    }
};

/// g(b) = max_k { gbar_k + lambda_k (u_k(b) - u_k(b_k)) }.
struct PiecewiseBudgetCost {
    VectorXd offsets;
    VectorXd slopes;
    VectorXd anchors;  // u_k(b_k)

    PiecewiseBudgetCost(const CrpCertificate& cert, const VectorXd& u_data_diag)
        : offsets(cert.values), slopes(cert.multipliers), anchors(u_data_diag) {}

    template <typename Derived>
    double operator()(const Eigen::MatrixBase<Derived>& u_evals) const {
        return (offsets + slopes.cwiseProduct(u_evals - anchors)).maxCoeff();
    }
};

/// Evaluates the piecewise-min utility at a bundle b given g_evals(k) = g_k(b).
double reconstruct_utility(const AfriatCertificate& cert, const VectorXd& g_evals);

/// Evaluates the piecewise-max budget cost at a bundle b given
/// u_evals(k) = u_k(b) and u_data_diag(k) = u_k(b_k).
double reconstruct_budget_cost(const CrpCertificate& cert, const VectorXd& u_evals, const VectorXd& u_data_diag);

/// ghat_k = M - gbar_k with M = max_k gbar_k + 1.
VectorXd appendix_transform(const VectorXd& gbar);
VectorXd appendix_transform(const VectorXd& gbar, double upper);

}  // namespace revpref

#endif  // REVPREF_CLASSICAL_HPP
