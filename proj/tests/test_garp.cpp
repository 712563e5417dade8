#include "doctest.h"
#include "oracles.hpp"

#include "revpref/garp.hpp"

#include <random>

using namespace revpref;
using Eigen::MatrixXd;

namespace {

MatrixXd random_afford(std::mt19937_64& rng, Eigen::Index k) {
    // Mostly positive entries, so that relations are sparse enough for
    // GARP to hold on a fair share of the draws.
    std::uniform_real_distribution<double> u(-0.4, 1.0);
    MatrixXd a(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) a(i, j) = i == j ? 0.0 : u(rng);
    return a;
}

void check_witness(const MatrixXd& afford, const GarpViolation& v) {
    REQUIRE(v.chain.size() >= 2);
    CHECK(v.chain.front() == v.k);
    CHECK(v.chain.back() == v.j);
    CHECK(v.k != v.j);
    for (std::size_t i = 0; i + 1 < v.chain.size(); ++i) CHECK(afford(v.chain[i], v.chain[i + 1]) <= kVerifyTol);
    CHECK(afford(v.j, v.k) < -kVerifyTol);
    CHECK(v.reversal == afford(v.j, v.k));
}

}  // namespace

TEST_CASE("nothing cross-affordable gives the identity relation") {
    MatrixXd a = MatrixXd::Ones(4, 4);
    a.diagonal().setZero();
    const PreferenceRelation rel = build_relation(a);
    CHECK(rel.direct == BoolMatrix::Identity(4, 4));
    CHECK(rel.closure == BoolMatrix::Identity(4, 4));
    CHECK(check_garp(a).holds);
}

TEST_CASE("all-zero affordability closes to the complete relation") {
    const PreferenceRelation rel = build_relation(MatrixXd::Zero(3, 3));
    CHECK(rel.closure.all());
    CHECK(check_garp(MatrixXd::Zero(3, 3)).holds);
}

TEST_CASE("closure is transitive") {
    MatrixXd a = MatrixXd::Ones(3, 3);
    a.diagonal().setZero();
    a(0, 1) = -0.5;
    a(1, 2) = 0.0;
    const PreferenceRelation rel = build_relation(a);
    CHECK(rel.closure(0, 2));
    CHECK_FALSE(rel.direct(0, 2));
    CHECK_FALSE(rel.closure(2, 0));
    CHECK(transitive_closure(rel.closure) == rel.closure);
}

TEST_CASE("affordability threshold sits at verify_tol") {
    MatrixXd a = MatrixXd::Ones(2, 2);
    a.diagonal().setZero();
    a(0, 1) = 0.5 * kVerifyTol;
    CHECK(build_relation(a).direct(0, 1));
    a(0, 1) = 2 * kVerifyTol;
    CHECK_FALSE(build_relation(a).direct(0, 1));
}

TEST_CASE("K=1 always holds") {
    MatrixXd a(1, 1);
    a << -5;
    CHECK(check_garp(a).holds);
}

TEST_CASE("mutual strict affordability is a 2-cycle") {
    MatrixXd a(2, 2);
    a << 0, -1, -1, 0;
    const GarpReport rep = check_garp(a);
    REQUIRE_FALSE(rep.holds);
    REQUIRE(rep.violation.has_value());
    CHECK(rep.violation->k == 0);
    CHECK(rep.violation->j == 1);
    CHECK(rep.violation->chain == std::vector<Eigen::Index>{0, 1});
    check_witness(a, *rep.violation);
}

TEST_CASE("witness is the smallest pair with a shortest chain") {
    // 0 -> 1 -> 2 -> 3 and 0 -> 3 directly; 3 strictly prefers 0's bundle.
    MatrixXd a = MatrixXd::Ones(4, 4);
    a.diagonal().setZero();
    a(0, 1) = a(1, 2) = a(2, 3) = 0;
    a(0, 3) = -0.1;
    a(3, 0) = -1;
    const GarpReport rep = check_garp(a);
    REQUIRE(rep.violation.has_value());
    CHECK(rep.violation->k == 0);
    CHECK(rep.violation->j == 3);
    CHECK(rep.violation->chain == std::vector<Eigen::Index>{0, 3});
    check_witness(a, *rep.violation);

    a(0, 3) = 1;
    const GarpReport longer = check_garp(a);
    REQUIRE(longer.violation.has_value());
    CHECK(longer.violation->chain == std::vector<Eigen::Index>{0, 1, 2, 3});
    check_witness(a, *longer.violation);
}

TEST_CASE("weak reversal is not a violation") {
    MatrixXd a(2, 2);
    a << 0, 0, 0, 0;
    CHECK(check_garp(a).holds);
    a(0, 1) = -0.5 * kVerifyTol;
    CHECK(check_garp(a).holds);
    a(0, 1) = -2 * kVerifyTol;
    CHECK_FALSE(check_garp(a).holds);
}

TEST_CASE("crp affordability is the utility gap") {
    MatrixXd u(3, 3);
    u << 3, 1, 2, 0, 5, 4, 1, 1, 1;
    const MatrixXd a = crp_affordability(u);
    for (Eigen::Index k = 0; k < 3; ++k)
        for (Eigen::Index j = 0; j < 3; ++j) CHECK(a(k, j) == u(k, k) - u(k, j));
    CHECK(a.diagonal().isZero());

    const MatrixXd own_max = MatrixXd::Identity(3, 3) * 2 + MatrixXd::Ones(3, 3);
    const MatrixXd strict = crp_affordability(own_max);
    CHECK((strict.array() + MatrixXd::Identity(3, 3).array() > 0).all());
    CHECK(check_garp(strict).holds);

    CHECK(crp_affordability(MatrixXd::Constant(3, 3, 7.0)).isZero());
    CHECK(check_garp(crp_affordability(MatrixXd::Constant(3, 3, 7.0))).holds);
}

TEST_CASE("closure-based verdict matches chain enumeration") {
    std::mt19937_64 rng(2024);
    int violations = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index k = 1 + trial % 7;
        const MatrixXd a = random_afford(rng, k);
        const GarpReport rep = check_garp(a);
        CHECK(rep.holds == oracle::garp_holds(a, kVerifyTol));
        CHECK(rep.holds == !rep.violation.has_value());
        if (rep.violation) {
            check_witness(a, *rep.violation);
            ++violations;
        }
        const PreferenceRelation rel = build_relation(a);
        CHECK(transitive_closure(rel.closure) == rel.closure);
        CHECK(((rel.closure.array() || !rel.direct.array())).all());
    }
    CHECK(violations > 50);
    CHECK(violations < 450);
}
