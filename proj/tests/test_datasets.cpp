#include "doctest.h"

#include "revpref/datasets.hpp"
#include "revpref/synth.hpp"

#include <filesystem>
#include <fstream>

using namespace revpref;

namespace {

const std::filesystem::path kData = REVPREF_TEST_DATA_DIR;

bool mentions(const ValidationReport& rep, const std::string& needle) {
    for (const auto& v : rep.violations)
        if (v.message.find(needle) != std::string::npos) return true;
    return false;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "revpref_test_datasets";
    std::filesystem::create_directories(dir);
    return dir / name;
}

double max_diff(const std::vector<MatrixXd>& a, const std::vector<MatrixXd>& b) {
    REQUIRE(a.size() == b.size());
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).cwiseAbs().maxCoeff());
    return d;
}

}  // namespace

TEST_CASE("well-formed 2x2x2 bayes file loads") {
    const BayesInstance inst = load_bayes(kData / "bayes_2x2x2.json");
    CHECK(inst.size() == 2);
    CHECK(inst.states() == 2);
    CHECK(inst.observations() == 2);
    CHECK(inst.actions() == 2);
    CHECK(inst.payoffs[1](0, 0) == 2);
    CHECK(validate(inst).ok());
}

TEST_CASE("nonzero budget diagonal is a validation error") {
    try {
        load_classical(kData / "classical_bad_diagonal.json");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.report().violations.size() == 1);
        CHECK(e.report().violations[0].path == "budget_evals[1][1]");
        CHECK(mentions(e.report(), "g_k(b_k) = 0"));
        CHECK(e.report().violations[0].magnitude == doctest::Approx(0.5));
    }
}

TEST_CASE("strategy row summing to 0.9 is a validation error") {
    try {
        load_bayes(kData / "bayes_bad_row.json");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(mentions(e.report(), "kernel row sums to 0.9"));
        CHECK(e.report().violations[0].path == "strategies[0][0]");
    }
    LoadOptions opts;
    opts.renormalize = true;
    const BayesInstance fixed = load_bayes(kData / "bayes_bad_row.json", opts);
    CHECK(fixed.strategies[0](0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(fixed.strategies[0].row(0).sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("validate reports prior sums and negative kernel entries") {
    BayesInstance inst;
    inst.prior = Eigen::Vector2d(0.6, 0.6);
    inst.payoffs = {MatrixXd::Identity(2, 2)};
    inst.strategies = {MatrixXd::Identity(2, 2)};
    ValidationReport rep = validate(inst);
    CHECK_FALSE(rep.ok());
    CHECK(mentions(rep, "prior sums to 1.2"));

    inst.prior = Eigen::Vector2d(0.5, 0.5);
    inst.strategies[0] << 1.1, -0.1, 0, 1;
    rep = validate(inst);
    CHECK(mentions(rep, "negative kernel entry"));
    CHECK(rep.summary().find("strategies[0][0][1]") != std::string::npos);

    inst.strategies[0] = MatrixXd::Identity(2, 2);
    CHECK(validate(inst).ok());
    CHECK(validate(inst).summary() == "ok");
}

TEST_CASE("validate does not mutate and generated instances are valid") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.experiments = 1 + seed % 5;
        const BayesInstance b = gen_bayes_rational(cfg);
        const BayesInstance copy = b;
        CHECK(validate(b).ok());
        CHECK(max_diff(b.strategies, copy.strategies) == 0);
        CHECK(validate(gen_classical(cfg)).ok());
    }
}

TEST_CASE("classical bundles must be nonnegative and shapes consistent") {
    ClassicalInstance c;
    c.bundles = MatrixXd::Ones(2, 2);
    c.bundles(1, 0) = -1;
    c.budget_evals = MatrixXd::Zero(2, 2);
    CHECK(mentions(validate(c), "negative bundle entry"));
    c.bundles = MatrixXd::Ones(3, 2);
    CHECK_FALSE(validate(c).ok());
    c.budget_evals = MatrixXd::Zero(2, 3);
    CHECK(mentions(validate(c), "K x K"));
}

TEST_CASE("crp entries must be finite") {
    CrpInstance c;
    c.utility_evals = MatrixXd::Zero(2, 2);
    CHECK(validate(c).ok());
    c.utility_evals(0, 1) = std::numeric_limits<double>::infinity();
    CHECK(mentions(validate(c), "non-finite"));
}

TEST_CASE("parse and schema errors") {
    CHECK_THROWS_AS(parse_instance("{not json"), ParseError);
    CHECK_THROWS_AS(parse_instance("[1, 2]"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "weird"})"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "classical", "bundles": [[1]]})"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "crp", "utility_evals": [[1, 2], [3]]})"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "crp", "utility_evals": [[1, "x"], [3, 4]]})"), SchemaError);
    CHECK_THROWS_AS(parse_instance(R"({"kind": "crp", "utility_evals": [[0]]})", InstanceKind::Bayes), SchemaError);
    CHECK_THROWS_AS(load_instance(kData / "does_not_exist.json"), ParseError);
    const AnyInstance ok = parse_instance(R"({"kind": "crp", "utility_evals": [[0]]})", InstanceKind::Crp);
    CHECK(kind_of(ok) == InstanceKind::Crp);
    CHECK(kind_name(kind_of(ok)) == "crp");
}

TEST_CASE("save then load is the identity") {
    GeneratorConfig cfg;
    cfg.seed = 99;
    cfg.experiments = 5;
    cfg.states = 4;
    cfg.observations = 3;
    cfg.actions = 2;
    BayesInstance b = gen_bayes_rational(cfg);
    b.policies.assign(5, std::vector<Index>{0, 1, 1});
    save_instance(scratch("bayes.json"), b);
    const BayesInstance b2 = load_bayes(scratch("bayes.json"));
    CHECK((b.prior - b2.prior).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(max_diff(b.payoffs, b2.payoffs) <= 1e-15);
    CHECK(max_diff(b.strategies, b2.strategies) <= 1e-15);
    CHECK(b2.policies == b.policies);

    cfg.goods = 4;
    const ClassicalInstance c = gen_classical(cfg);
    save_instance(scratch("classical.json"), c);
    const ClassicalInstance c2 = load_classical(scratch("classical.json"));
    CHECK((c.bundles - c2.bundles).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((c.budget_evals - c2.budget_evals).cwiseAbs().maxCoeff() <= 1e-15);

    const CrpInstance r = load_crp(kData / "crp_rational.json");
    save_instance(scratch("crp.json"), r);
    const CrpInstance r2 = load_crp(scratch("crp.json"));
    CHECK(r2.utility_evals == r.utility_evals);
    REQUIRE(r2.bundles.has_value());
    CHECK(*r2.bundles == *r.bundles);
}
