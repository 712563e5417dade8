#ifndef REVPREF_GARP_HPP
#define REVPREF_GARP_HPP

#include "revpref/lp_core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace revpref {

using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Revealed-preference relation induced by an affordability matrix, where
/// afford(k, j) plays the role of g_k(b_j): bundle j was affordable when
/// bundle k was chosen iff afford(k, j) <= tol.
struct PreferenceRelation {
    BoolMatrix direct;
    BoolMatrix closure;  // reflexive-transitive

    Eigen::Index size() const { return direct.rows(); }
};

/// A chain k = chain.front() -> ... -> chain.back() = j of direct edges,
/// together with the strict reversal afford(j, k) < -tol.
struct GarpViolation {
    Eigen::Index k = 0;
    Eigen::Index j = 0;
    std::vector<Eigen::Index> chain;
    double reversal = 0;  // afford(j, k)
};

struct GarpReport {
    bool holds = true;
    std::optional<GarpViolation> violation;
};

PreferenceRelation build_relation(const Eigen::MatrixXd& afford, double tol = kVerifyTol);

/// Boolean Floyd-Warshall closure, with the diagonal forced to true.
BoolMatrix transitive_closure(const BoolMatrix& direct);

GarpReport check_garp(const Eigen::MatrixXd& afford, double tol = kVerifyTol);

/// Affordability for known utilities: afford(k, j) = u_k(b_k) - u_k(b_j).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
crp_affordability(const Eigen::MatrixBase<Derived>& umat) {
    return umat.diagonal().replicate(1, umat.cols()) - umat;
}

}  // namespace revpref

#endif  // REVPREF_GARP_HPP
