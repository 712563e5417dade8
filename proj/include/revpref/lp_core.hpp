#ifndef REVPREF_LP_CORE_HPP
#define REVPREF_LP_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace revpref {

/// Default tolerance of the feasibility solver.
inline constexpr double kFeasTol = 1e-9;
/// Default tolerance for re-verifying certificates and relations downstream.
inline constexpr double kVerifyTol = 1e-7;

enum class Relation { LessEqual, Equal, GreaterEqual };

class MalformedSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
struct LinearRow {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coeffs;
    Relation relation = Relation::LessEqual;
    Scalar rhs = 0;
};

/// A small dense system of linear inequalities and equalities.
///
/// Variables carry lower bounds; a bound of -infinity marks the variable
/// as free. Upper bounds are expressed as ordinary rows.
template <typename Scalar>
struct LinearSystemT {
    using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    Eigen::Index num_vars = 0;
    std::vector<LinearRow<Scalar>> rows;
    VectorType lower;

    LinearSystemT() = default;

    /// All variables start at lower bound 0.
    explicit LinearSystemT(Eigen::Index n) : num_vars(n), lower(VectorType::Zero(n)) {}

    static Scalar unbounded() { return -std::numeric_limits<Scalar>::infinity(); }

    void set_free(Eigen::Index var) { lower(var) = unbounded(); }

    template <typename Derived>
    void add_row(const Eigen::MatrixBase<Derived>& coeffs, Relation rel, Scalar rhs) {
        rows.push_back(LinearRow<Scalar>{coeffs, rel, rhs});
    }

    /// Signed violation of one row at `x`; zero when satisfied.
    Scalar row_violation(std::size_t r, const VectorType& x) const {
        const auto& row = rows[r];
        const Scalar lhs = row.coeffs.dot(x);
        switch (row.relation) {
            case Relation::LessEqual: return std::max<Scalar>(0, lhs - row.rhs);
            case Relation::GreaterEqual: return std::max<Scalar>(0, row.rhs - lhs);
            case Relation::Equal: return std::abs(lhs - row.rhs);
        }
        return 0;
    }

    /// Largest violation over rows and lower bounds.
    Scalar max_violation(const VectorType& x) const {
        Scalar worst = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) worst = std::max(worst, row_violation(r, x));
        for (Eigen::Index j = 0; j < num_vars; ++j)
            if (std::isfinite(lower(j))) worst = std::max<Scalar>(worst, lower(j) - x(j));
        return worst;
    }
};

template <typename Scalar>
struct FeasibilityOutcomeT {
    bool feasible = false;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> point;  // empty when infeasible
    Scalar max_residual = 0;                          // meaningful only when feasible
    Scalar phase1_objective = 0;
    int pivots = 0;
};

using LinearSystem = LinearSystemT<double>;
using FeasibilityOutcome = FeasibilityOutcomeT<double>;

namespace detail {

template <typename Scalar>
void validate_system(const LinearSystemT<Scalar>& sys) {
    if (sys.num_vars <= 0) throw MalformedSystem("linear system needs at least one variable");
    if (sys.lower.size() != sys.num_vars)
        throw MalformedSystem("lower bound vector has " + std::to_string(sys.lower.size()) +
                              " entries, expected " + std::to_string(sys.num_vars));
    for (Eigen::Index j = 0; j < sys.num_vars; ++j) {
        const Scalar lb = sys.lower(j);
        if (std::isnan(lb) || lb == std::numeric_limits<Scalar>::infinity())
            throw MalformedSystem("lower bound of variable " + std::to_string(j) + " is not usable");
    }
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        const auto& row = sys.rows[r];
        if (row.coeffs.size() != sys.num_vars)
            throw MalformedSystem("row " + std::to_string(r) + " has " + std::to_string(row.coeffs.size()) +
                                  " coefficients, expected " + std::to_string(sys.num_vars));
        if (!row.coeffs.allFinite() || !std::isfinite(row.rhs))
            throw MalformedSystem("row " + std::to_string(r) + " has a non-finite entry");
    }
}

}  // namespace detail

/// Decides feasibility of `sys` with a phase-1 simplex on a dense tableau.
///
/// Rows are equilibrated to unit max-norm before pivoting, free variables
/// are split into differences of nonnegative parts and bounded variables
/// are shifted to zero. The entering column follows Bland's rule; the
/// leaving row comes from a two-pass (Harris) ratio test that prefers large
/// pivots, and reverts to Bland's smallest-index choice after a long run of
/// degenerate pivots, so the procedure terminates and is deterministic. The
/// tableau is periodically rebuilt from the original rows to shed rounding
/// error. The system is declared infeasible when the optimal phase-1
/// objective (sum of artificials) exceeds `feas_tol`.
template <typename Scalar>
FeasibilityOutcomeT<Scalar> solve_feasibility(const LinearSystemT<Scalar>& sys,
                                              Scalar feas_tol = Scalar(kFeasTol)) {
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Index = Eigen::Index;

    detail::validate_system(sys);
    FeasibilityOutcomeT<Scalar> out;

    const Index n = sys.num_vars;
    Vector base(n);
    for (Index j = 0; j < n; ++j) base(j) = std::isfinite(sys.lower(j)) ? sys.lower(j) : Scalar(0);

    if (sys.rows.empty()) {
        out.feasible = true;
        out.point = base;
        return out;
    }

    // Column map: structural column -> (variable, sign).
    std::vector<Index> col_var;
    std::vector<Scalar> col_sign;
    for (Index j = 0; j < n; ++j) {
        col_var.push_back(j);
        col_sign.push_back(1);
        if (!std::isfinite(sys.lower(j))) {
            col_var.push_back(j);
            col_sign.push_back(-1);
        }
    }
    const Index n_struct = static_cast<Index>(col_var.size());
    const Index m = static_cast<Index>(sys.rows.size());

    // Normalized rows: a.y (rel) b with b >= 0.
    Matrix a(m, n_struct);
    Vector b(m);
    std::vector<Relation> rel(m);
    for (Index i = 0; i < m; ++i) {
        const auto& row = sys.rows[i];
        Scalar rhs = row.rhs - row.coeffs.dot(base);
        for (Index c = 0; c < n_struct; ++c) a(i, c) = col_sign[c] * row.coeffs(col_var[c]);
        const Scalar scale = std::max(a.row(i).cwiseAbs().maxCoeff(), std::abs(rhs));
        Scalar factor = scale > 0 ? Scalar(1) / scale : Scalar(1);
        Relation r = row.relation;
        if (rhs < 0) {
            factor = -factor;
            if (r == Relation::LessEqual) r = Relation::GreaterEqual;
            else if (r == Relation::GreaterEqual) r = Relation::LessEqual;
        }
        a.row(i) *= factor;
        b(i) = rhs * factor;
        rel[i] = r;
    }

    Index n_slack = 0, n_art = 0;
    for (Relation r : rel) {
        if (r != Relation::Equal) ++n_slack;
        if (r != Relation::LessEqual) ++n_art;
    }
    const Index n_cols = n_struct + n_slack + n_art;
    const Index first_art = n_struct + n_slack;

    // Tableau rows 0..m-1 are constraints, row m holds reduced costs; the
    // last column is the right-hand side.
    Matrix t = Matrix::Zero(m + 1, n_cols + 1);
    std::vector<Index> basis(m);
    t.topLeftCorner(m, n_struct) = a;
    t.col(n_cols).head(m) = b;
    Index s = n_struct, art = first_art;
    for (Index i = 0; i < m; ++i) {
        if (rel[i] == Relation::LessEqual) {
            t(i, s) = 1;
            basis[i] = s++;
        } else {
            if (rel[i] == Relation::GreaterEqual) t(i, s++) = -1;
            t(i, art) = 1;
            basis[i] = art++;
            t.row(m) -= t.row(i);
        }
    }
    for (Index c = first_art; c < n_cols; ++c) t(m, c) = 0;

    // Original columns and phase-1 costs, kept for reinversion.
    const Matrix original = t.topRows(m);
    Vector cost = Vector::Zero(n_cols);
    cost.segment(first_art, n_art).setOnes();

    // Rebuilds the tableau from the original data for the current basis,
    // discarding the rounding error accumulated by elimination steps.
    auto reinvert = [&]() {
        Matrix basis_cols(m, m);
        Vector basis_cost(m);
        for (Index i = 0; i < m; ++i) {
            basis_cols.col(i) = original.col(basis[i]);
            basis_cost(i) = cost(basis[i]);
        }
        const Eigen::PartialPivLU<Matrix> lu(basis_cols);
        t.topRows(m) = lu.solve(original);
        for (Index i = 0; i < m; ++i)
            if (t(i, n_cols) < 0 && t(i, n_cols) > -Scalar(1e-12)) t(i, n_cols) = 0;
        t.row(m).head(n_cols) = cost.transpose() - basis_cost.transpose() * t.topLeftCorner(m, n_cols);
        t(m, n_cols) = -basis_cost.dot(t.col(n_cols).head(m));
    };

    const Scalar cost_tol = Scalar(1e-11);
    const Scalar pivot_tol = Scalar(1e-9);
    const int reinvert_every = static_cast<int>(std::max<Index>(50, m / 4));
    const int max_pivots = 50000;
    const Scalar harris_delta = Scalar(1e-12);
    const int bland_after = 50;
    int degenerate_run = 0;
    bool verified = false;
    while (true) {
        Index enter = -1;
        for (Index c = 0; c < n_cols; ++c) {
            if (t(m, c) < -cost_tol) {
                enter = c;
                break;
            }
        }
        if (enter < 0) {
            // Confirm optimality on a freshly inverted tableau.
            if (verified || out.pivots == 0) break;
            reinvert();
            verified = true;
            continue;
        }
        verified = false;

        // Two-pass ratio test: bound the step with a small slack, then take
        // the largest pivot among rows within that bound (smallest basic
        // index on ties). Stalled runs fall back to the plain Bland choice.
        const bool strict_bland = degenerate_run > bland_after;
        Scalar bound = std::numeric_limits<Scalar>::infinity();
        for (Index i = 0; i < m; ++i) {
            if (t(i, enter) <= pivot_tol) continue;
            const Scalar slack = strict_bland ? Scalar(0) : harris_delta;
            bound = std::min(bound, (std::max<Scalar>(0, t(i, n_cols)) + slack) / t(i, enter));
        }
        // Phase 1 is bounded below by zero, so an unbounded ray cannot occur.
        if (!std::isfinite(bound)) break;
        Index leave = -1;
        for (Index i = 0; i < m; ++i) {
            if (t(i, enter) <= pivot_tol) continue;
            const Scalar ratio = std::max<Scalar>(0, t(i, n_cols)) / t(i, enter);
            if (ratio > bound + (strict_bland ? Scalar(1e-12) * (1 + bound) : Scalar(0))) continue;
            if (leave < 0) {
                leave = i;
            } else if (strict_bland) {
                if (basis[i] < basis[leave]) leave = i;
            } else if (t(i, enter) > t(leave, enter) ||
                       (t(i, enter) == t(leave, enter) && basis[i] < basis[leave])) {
                leave = i;
            }
        }
        const Scalar step = std::max<Scalar>(0, t(leave, n_cols)) / t(leave, enter);
        degenerate_run = step <= Scalar(1e-12) ? degenerate_run + 1 : 0;
        t(leave, n_cols) = std::max<Scalar>(0, t(leave, n_cols));

        t.row(leave) /= t(leave, enter);
        Vector factors = t.col(enter);
        factors(leave) = 0;
        t.noalias() -= factors * t.row(leave);
        basis[leave] = enter;
        for (Index i = 0; i < m; ++i)
            if (t(i, n_cols) < 0) t(i, n_cols) = 0;
        if (++out.pivots > max_pivots) throw std::runtime_error("simplex pivot limit exceeded");
        if (out.pivots % reinvert_every == 0) reinvert();
    }

    out.phase1_objective = -t(m, n_cols);
    if (out.phase1_objective > feas_tol) return out;

    Vector y = Vector::Zero(n_cols);
    for (Index i = 0; i < m; ++i) y(basis[i]) = std::max<Scalar>(0, t(i, n_cols));
    Vector x = base;
    for (Index c = 0; c < n_struct; ++c) x(col_var[c]) += col_sign[c] * y(c);

    out.feasible = true;
    out.point = x;
    out.max_residual = sys.max_violation(x);
    return out;
}

/// Non-template entry point for the common double-precision case.
FeasibilityOutcome solve_feasibility(const LinearSystem& sys);

}  // namespace revpref

#endif  // REVPREF_LP_CORE_HPP
