#include "doctest.h"
#include "oracles.hpp"

#include "revpref/classical.hpp"
#include "revpref/lp_core.hpp"
#include "revpref/synth.hpp"

#include <limits>
#include <random>

using namespace revpref;

namespace {

Eigen::VectorXd row(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

// Afriat rows for K = 3 over (u_1..u_3, l_1..l_3), as A x <= b, plus
// l >= 1 and the box |u| <= box, l <= box.
void afriat_polytope(const Eigen::MatrixXd& g, double box, Eigen::MatrixXd& a, Eigen::VectorXd& b) {
    const Eigen::Index k = g.rows(), n = 2 * k;
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> rhs;
    for (Eigen::Index t = 0; t < k; ++t)
        for (Eigen::Index s = 0; s < k; ++s) {
            if (s == t) continue;
            Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
            r(s) += 1;
            r(t) -= 1;
            r(k + t) = -g(t, s);
            rows.push_back(r);
            rhs.push_back(0);
        }
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXd up = Eigen::VectorXd::Zero(n), down = Eigen::VectorXd::Zero(n);
        up(j) = 1;
        down(j) = -1;
        rows.push_back(up);
        rhs.push_back(box);
        rows.push_back(down);
        rhs.push_back(j < k ? box : -1.0);
    }
    a.resize(static_cast<Eigen::Index>(rows.size()), n);
    b.resize(a.rows());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        a.row(i) = rows[static_cast<std::size_t>(i)].transpose();
        b(i) = rhs[static_cast<std::size_t>(i)];
    }
}

LinearSystem as_system(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
    LinearSystem sys(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) sys.set_free(j);
    for (Eigen::Index i = 0; i < a.rows(); ++i) sys.add_row(a.row(i).transpose(), Relation::LessEqual, b(i));
    return sys;
}

}  // namespace

TEST_CASE("box is feasible") {
    LinearSystem sys(1);
    sys.add_row(row({1}), Relation::GreaterEqual, 0);
    sys.add_row(row({1}), Relation::LessEqual, 1);
    const auto out = solve_feasibility(sys);
    REQUIRE(out.feasible);
    CHECK(out.point(0) >= -kFeasTol);
    CHECK(out.point(0) <= 1 + kFeasTol);
    CHECK(sys.max_violation(out.point) <= kFeasTol);
}

TEST_CASE("empty intersection is infeasible") {
    LinearSystem sys(1);
    sys.set_free(0);
    sys.add_row(row({1}), Relation::LessEqual, -1);
    sys.add_row(row({1}), Relation::GreaterEqual, 1);
    const auto out = solve_feasibility(sys);
    CHECK_FALSE(out.feasible);
    CHECK(out.phase1_objective > kFeasTol);
    CHECK(out.point.size() == 0);
}

TEST_CASE("zero rows returns the lower-bound point") {
    LinearSystem sys(3);
    sys.lower << 2, -std::numeric_limits<double>::infinity(), -1;
    const auto out = solve_feasibility(sys);
    REQUIRE(out.feasible);
    CHECK(out.point(0) == 2);
    CHECK(out.point(1) == 0);
    CHECK(out.point(2) == -1);
}

TEST_CASE("equality rows and shifted bounds") {
    LinearSystem sys(2);
    sys.lower << 1, 2;
    sys.add_row(row({1, 1}), Relation::Equal, 5);
    sys.add_row(row({1, -1}), Relation::LessEqual, 0);
    const auto out = solve_feasibility(sys);
    REQUIRE(out.feasible);
    CHECK(out.point.sum() == doctest::Approx(5).epsilon(1e-12));
    CHECK(out.point(0) >= 1 - kFeasTol);
    CHECK(out.point(1) >= 2 - kFeasTol);
    CHECK(out.point(0) <= out.point(1) + kFeasTol);

    LinearSystem tight(2);
    tight.lower << 1, 2;
    tight.add_row(row({1, 1}), Relation::Equal, 2.5);
    CHECK_FALSE(solve_feasibility(tight).feasible);
}

TEST_CASE("malformed systems are rejected") {
    LinearSystem wrong_width(2);
    wrong_width.add_row(row({1, 2, 3}), Relation::LessEqual, 0);
    CHECK_THROWS_AS(solve_feasibility(wrong_width), MalformedSystem);

    LinearSystem nan_rhs(1);
    nan_rhs.add_row(row({1}), Relation::LessEqual, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(solve_feasibility(nan_rhs), MalformedSystem);

    LinearSystem inf_coeff(1);
    inf_coeff.add_row(row({std::numeric_limits<double>::infinity()}), Relation::LessEqual, 0);
    CHECK_THROWS_AS(solve_feasibility(inf_coeff), MalformedSystem);

    LinearSystem bad_bounds(2);
    bad_bounds.lower.resize(1);
    CHECK_THROWS_AS(solve_feasibility(bad_bounds), MalformedSystem);
}

TEST_CASE("random bounded systems agree with vertex enumeration") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1, 1);
    int feasible = 0, infeasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Eigen::Index n = 2 + trial % 2, m = 3 + trial % 4;
        Eigen::MatrixXd a(m + 2 * n, n);
        Eigen::VectorXd b(m + 2 * n);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) a(i, j) = coef(rng);
            b(i) = coef(rng) * 0.6;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            a.row(m + 2 * j).setZero();
            a(m + 2 * j, j) = 1;
            b(m + 2 * j) = 2;
            a.row(m + 2 * j + 1).setZero();
            a(m + 2 * j + 1, j) = -1;
            b(m + 2 * j + 1) = 2;
        }
        const LinearSystem sys = as_system(a, b);
        const auto out = solve_feasibility(sys);
        const bool expected = oracle::polytope_nonempty(a, b, 1e-9);
        CHECK(out.feasible == expected);
        if (out.feasible) {
            CHECK(sys.max_violation(out.point) <= kFeasTol);
            ++feasible;
        } else {
            ++infeasible;
        }
    }
    CHECK(feasible > 20);
    CHECK(infeasible > 20);
}

TEST_CASE("solver is deterministic and verdicts are scale invariant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coef(-1, 1);
    for (int trial = 0; trial < 100; ++trial) {
        LinearSystem sys(3), scaled(3);
        const double c = 0.01 + 100.0 * (trial % 7);
        for (int r = 0; r < 5; ++r) {
            const Eigen::Vector3d v(coef(rng), coef(rng), coef(rng));
            const double rhs = coef(rng);
            const Relation rel = r == 4 ? Relation::Equal : (r % 2 ? Relation::GreaterEqual : Relation::LessEqual);
            sys.add_row(v, rel, rhs);
            scaled.add_row(c * v, rel, c * rhs);
        }
        const auto first = solve_feasibility(sys);
        const auto second = solve_feasibility(sys);
        CHECK(first.feasible == second.feasible);
        CHECK(first.point == second.point);
        CHECK(solve_feasibility(scaled).feasible == first.feasible);
    }
}

TEST_CASE("K=3 Afriat system on Cobb-Douglas data matches vertex enumeration") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.experiments = 3;
        cfg.goods = 2;
        const ClassicalInstance inst = gen_classical(cfg);
        Eigen::MatrixXd a;
        Eigen::VectorXd b;
        afriat_polytope(inst.budget_evals, 1e3, a, b);
        CHECK(oracle::polytope_nonempty(a, b, 1e-9));
        const auto out = solve_feasibility(as_system(a, b));
        CHECK(out.feasible);
        CHECK(afriat_feasibility(inst).has_value());
    }
}

TEST_CASE("strict 2-cycle Afriat system is empty for the vertex oracle and the solver") {
    Eigen::MatrixXd g(3, 3);
    g << 0, -1, 1, -1, 0, 1, 1, 1, 0;
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    afriat_polytope(g, 1e3, a, b);
    CHECK_FALSE(oracle::polytope_nonempty(a, b, 1e-9));
    CHECK_FALSE(solve_feasibility(as_system(a, b)).feasible);
}

TEST_CASE("long double instantiation") {
    LinearSystemT<long double> sys(2);
    Eigen::Matrix<long double, 2, 1> r(1, 1);
    sys.add_row(r, Relation::Equal, 1);
    const auto out = solve_feasibility(sys, 1e-12L);
    REQUIRE(out.feasible);
    CHECK(std::abs(static_cast<double>(out.point.sum()) - 1.0) < 1e-12);
}
