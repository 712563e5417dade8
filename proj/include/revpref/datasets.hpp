#ifndef REVPREF_DATASETS_HPP
#define REVPREF_DATASETS_HPP

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace revpref {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Consumption data with known budgets: budget_evals(k, j) = g_k(bundle j).
struct ClassicalInstance {
    MatrixXd bundles;       // K x m, one bundle per row
    MatrixXd budget_evals;  // K x K

    Index size() const { return budget_evals.rows(); }
};

/// Maps an arbitrary bundle (a column vector, or a kernel for mapped
/// Bayesian data) to the K utilities (u_1(b), ..., u_K(b)).
using UtilityEvaluator = std::function<VectorXd(const MatrixXd&)>;

/// Consumption data with known utilities: utility_evals(t, s) = u_t(bundle s).
struct CrpInstance {
    MatrixXd utility_evals;           // K x K
    std::optional<MatrixXd> bundles;  // reporting only
    UtilityEvaluator evaluator;       // optional out-of-sample queries

    Index size() const { return utility_evals.rows(); }
};

/// Bayesian attention data. Payoff tables are states x actions, attention
/// strategies are row-stochastic states x observations kernels.
struct BayesInstance {
    VectorXd prior;
    std::vector<MatrixXd> payoffs;
    std::vector<MatrixXd> strategies;
    /// Optional observed action policies (observation -> action), one per
    /// experiment. Empty when the data carry no policies.
    std::vector<std::vector<Index>> policies;

    Index size() const { return static_cast<Index>(strategies.size()); }
    Index states() const { return prior.size(); }
    Index observations() const { return strategies.empty() ? 0 : strategies.front().cols(); }
    Index actions() const { return payoffs.empty() ? 0 : payoffs.front().cols(); }
};

enum class InstanceKind { Classical, Crp, Bayes };

using AnyInstance = std::variant<ClassicalInstance, CrpInstance, BayesInstance>;

struct Violation {
    std::string path;
    std::string message;
    double magnitude = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate(const ClassicalInstance& inst);
ValidationReport validate(const CrpInstance& inst);
ValidationReport validate(const BayesInstance& inst);
ValidationReport validate(const AnyInstance& inst);

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class ValidationError : public DataError {
public:
    explicit ValidationError(ValidationReport report)
        : DataError("validation failed: " + report.summary()), report_(std::move(report)) {}

    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

struct LoadOptions {
    /// Rescale prior and strategy rows to sum to one before validation.
    bool renormalize = false;
};

/// Parses a JSON document into an instance. When `expected` is set, the
/// document's "kind" must match it.
AnyInstance parse_instance(const std::string& text, std::optional<InstanceKind> expected = std::nullopt,
                           const LoadOptions& opts = {});
AnyInstance load_instance(const std::filesystem::path& path, std::optional<InstanceKind> expected = std::nullopt,
                          const LoadOptions& opts = {});

ClassicalInstance load_classical(const std::filesystem::path& path, const LoadOptions& opts = {});
CrpInstance load_crp(const std::filesystem::path& path, const LoadOptions& opts = {});
BayesInstance load_bayes(const std::filesystem::path& path, const LoadOptions& opts = {});

std::string to_json(const AnyInstance& inst, int indent = 2);
void save_instance(const std::filesystem::path& path, const AnyInstance& inst);

std::string kind_name(InstanceKind kind);
InstanceKind kind_of(const AnyInstance& inst);

/// Reads a whole file; throws ParseError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace revpref

#endif  // REVPREF_DATASETS_HPP
