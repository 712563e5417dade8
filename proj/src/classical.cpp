#include "revpref/classical.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace revpref {

std::optional<AfriatCertificate> afriat_feasibility(const Eigen::MatrixXd& g) {
    const Index k_count = g.rows();
    if (k_count == 0 || g.cols() != k_count) throw std::invalid_argument("budget evaluations must be K x K");

    // Variables: u_0..u_{K-1} (free), lambda_0..lambda_{K-1} (>= 1).
    LinearSystem sys(2 * k_count);
    for (Index k = 0; k < k_count; ++k) {
        sys.set_free(k);
        sys.lower(k_count + k) = 1.0;
    }
    for (Index t = 0; t < k_count; ++t) {
        for (Index s = 0; s < k_count; ++s) {
            if (s == t) continue;
            VectorXd row = VectorXd::Zero(2 * k_count);
            row(s) += 1.0;
            row(t) -= 1.0;
            row(k_count + t) = -g(t, s);
            sys.add_row(row, Relation::LessEqual, 0.0);
        }
    }
    const FeasibilityOutcome res = solve_feasibility(sys);
    if (!res.feasible) return std::nullopt;

    AfriatCertificate cert;
    cert.values = res.point.head(k_count);
    cert.values.array() += 1.0 - cert.values.minCoeff();
    cert.multipliers = res.point.tail(k_count);
    return cert;
}

std::optional<AfriatCertificate> afriat_feasibility(const ClassicalInstance& inst) {
    return afriat_feasibility(inst.budget_evals);
}

double afriat_max_residual(const AfriatCertificate& cert, const Eigen::MatrixXd& g) {
    double worst = -std::numeric_limits<double>::infinity();
    for (Index t = 0; t < g.rows(); ++t)
        for (Index s = 0; s < g.cols(); ++s)
            if (s != t)
                worst = std::max(worst, cert.values(s) - cert.values(t) - cert.multipliers(t) * g(t, s));
    return g.rows() > 1 ? worst : 0.0;
}

std::optional<CrpCertificate> crp_feasibility(const Eigen::MatrixXd& u) {
    const Index k_count = u.rows();
    if (k_count == 0 || u.cols() != k_count) throw std::invalid_argument("utility evaluations must be K x K");

    // Variables: gbar_0..gbar_{K-1} (>= 0), lambda_0..lambda_{K-1} (>= 1).
    LinearSystem sys(2 * k_count);
    sys.lower.tail(k_count).setOnes();
    for (Index t = 0; t < k_count; ++t) {
        for (Index s = 0; s < k_count; ++s) {
            if (s == t) continue;
            VectorXd row = VectorXd::Zero(2 * k_count);
            row(s) += 1.0;
            row(t) -= 1.0;
            row(k_count + t) = -(u(t, s) - u(t, t));
            sys.add_row(row, Relation::GreaterEqual, 0.0);
        }
    }
    const FeasibilityOutcome res = solve_feasibility(sys);
    if (!res.feasible) return std::nullopt;
    return CrpCertificate{res.point.head(k_count), res.point.tail(k_count)};
}

std::optional<CrpCertificate> crp_feasibility(const CrpInstance& inst) { return crp_feasibility(inst.utility_evals); }

double crp_min_slack(const CrpCertificate& cert, const Eigen::MatrixXd& u) {
    double worst = std::numeric_limits<double>::infinity();
    for (Index t = 0; t < u.rows(); ++t)
        for (Index s = 0; s < u.cols(); ++s)
            worst = std::min(worst, cert.values(s) - cert.values(t) - cert.multipliers(t) * (u(t, s) - u(t, t)));
    return worst;
}

double reconstruct_utility(const AfriatCertificate& cert, const VectorXd& g_evals) {
    return PiecewiseUtility(cert)(g_evals);
}

double reconstruct_budget_cost(const CrpCertificate& cert, const VectorXd& u_evals, const VectorXd& u_data_diag) {
    return PiecewiseBudgetCost(cert, u_data_diag)(u_evals);
}

VectorXd appendix_transform(const VectorXd& gbar) { return appendix_transform(gbar, gbar.maxCoeff() + 1.0); }

VectorXd appendix_transform(const VectorXd& gbar, double upper) {
    return (VectorXd::Constant(gbar.size(), upper) - gbar).eval();
}

}  // namespace revpref
