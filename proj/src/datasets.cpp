#include "revpref/datasets.hpp"

#include "revpref/lp_core.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace revpref {

using nlohmann::json;

namespace {

constexpr double kStochasticTol = 1e-12;

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string at(const std::string& base, Index i) { return base + "[" + std::to_string(i) + "]"; }

std::string at(const std::string& base, Index i, Index j) { return at(at(base, i), j); }

void check_finite(const MatrixXd& m, const std::string& path, ValidationReport& rep) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j))) rep.violations.push_back({at(path, i, j), "non-finite entry", 0});
}

void check_stochastic_rows(const MatrixXd& kernel, const std::string& path, ValidationReport& rep) {
    for (Index x = 0; x < kernel.rows(); ++x) {
        for (Index y = 0; y < kernel.cols(); ++y) {
            if (kernel(x, y) < 0)
                rep.violations.push_back({at(path, x, y), "negative kernel entry " + fmt_num(kernel(x, y)),
                                          -kernel(x, y)});
        }
        const double sum = kernel.row(x).sum();
        if (std::abs(sum - 1.0) > kStochasticTol)
            rep.violations.push_back({at(path, x), "kernel row sums to " + fmt_num(sum) + ", expected 1",
                                      std::abs(sum - 1.0)});
    }
}

// --- JSON decoding -------------------------------------------------------

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw SchemaError(path + ": expected a number");
    return v.get<double>();
}

VectorXd vector_from(const json& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path + ": expected an array of numbers");
    VectorXd out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = number(v[i], at(path, Index(i)));
    return out;
}

MatrixXd matrix_from(const json& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path + ": expected an array of rows");
    if (v.empty()) return MatrixXd(0, 0);
    const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    MatrixXd out(static_cast<Index>(v.size()), static_cast<Index>(cols));
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string row_path = at(path, Index(i));
        if (!v[i].is_array()) throw SchemaError(row_path + ": expected an array");
        if (v[i].size() != cols)
            throw SchemaError(row_path + ": ragged row of length " + std::to_string(v[i].size()) + ", expected " +
                              std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j)
            out(static_cast<Index>(i), static_cast<Index>(j)) = number(v[i][j], at(row_path, Index(j)));
    }
    return out;
}

std::vector<MatrixXd> tables_from(const json& v, const std::string& path) {
    if (!v.is_array()) throw SchemaError(path + ": expected an array of tables");
    std::vector<MatrixXd> out;
    for (std::size_t k = 0; k < v.size(); ++k) out.push_back(matrix_from(v[k], at(path, Index(k))));
    return out;
}

json to_json_matrix(const MatrixXd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json_vector(const VectorXd& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

void renormalize(BayesInstance& inst) {
    if (const double s = inst.prior.sum(); s > 0) inst.prior /= s;
    for (auto& kernel : inst.strategies)
        for (Index x = 0; x < kernel.rows(); ++x)
            if (const double s = kernel.row(x).sum(); s > 0) kernel.row(x) /= s;
}

}  // namespace

std::string ValidationReport::summary() const {
    if (violations.empty()) return "ok";
    std::string s;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) s += "; ";
        s += violations[i].path + ": " + violations[i].message;
    }
    return s;
}

ValidationReport validate(const ClassicalInstance& inst) {
    ValidationReport rep;
    const MatrixXd& g = inst.budget_evals;
    if (g.rows() == 0) rep.violations.push_back({"budget_evals", "at least one experiment is required", 0});
    if (g.rows() != g.cols()) {
        rep.violations.push_back({"budget_evals", "matrix must be K x K", 0});
        return rep;
    }
    if (inst.bundles.rows() != g.rows())
        rep.violations.push_back({"bundles", "expected " + std::to_string(g.rows()) + " bundles, got " +
                                                 std::to_string(inst.bundles.rows()),
                                  0});
    if (inst.bundles.rows() > 0 && inst.bundles.cols() == 0)
        rep.violations.push_back({"bundles", "bundle dimension must be positive", 0});
    check_finite(g, "budget_evals", rep);
    check_finite(inst.bundles, "bundles", rep);
    for (Index k = 0; k < g.rows(); ++k)
        if (std::abs(g(k, k)) > kVerifyTol)
            rep.violations.push_back({at("budget_evals", k, k),
                                      "diagonal entry " + fmt_num(g(k, k)) + " violates g_k(b_k) = 0",
                                      std::abs(g(k, k))});
    for (Index i = 0; i < inst.bundles.rows(); ++i)
        for (Index j = 0; j < inst.bundles.cols(); ++j)
            if (inst.bundles(i, j) < 0)
                rep.violations.push_back({at("bundles", i, j), "negative bundle entry", -inst.bundles(i, j)});
    return rep;
}

ValidationReport validate(const CrpInstance& inst) {
    ValidationReport rep;
    const MatrixXd& u = inst.utility_evals;
    if (u.rows() == 0) rep.violations.push_back({"utility_evals", "at least one experiment is required", 0});
    if (u.rows() != u.cols()) {
        rep.violations.push_back({"utility_evals", "matrix must be K x K", 0});
        return rep;
    }
    check_finite(u, "utility_evals", rep);
    if (inst.bundles && inst.bundles->rows() != u.rows())
        rep.violations.push_back({"bundles", "expected one bundle per experiment", 0});
    return rep;
}

ValidationReport validate(const BayesInstance& inst) {
    ValidationReport rep;
    const Index nx = inst.states();
    if (nx == 0) rep.violations.push_back({"prior", "at least one state is required", 0});
    for (Index x = 0; x < nx; ++x) {
        if (!std::isfinite(inst.prior(x))) rep.violations.push_back({at("prior", x), "non-finite entry", 0});
        else if (inst.prior(x) < 0)
            rep.violations.push_back({at("prior", x), "negative prior entry", -inst.prior(x)});
    }
    if (nx > 0) {
        const double sum = inst.prior.sum();
        if (std::abs(sum - 1.0) > kStochasticTol)
            rep.violations.push_back({"prior", "prior sums to " + fmt_num(sum), std::abs(sum - 1.0)});
    }

    const Index k_count = inst.size();
    if (k_count == 0) rep.violations.push_back({"strategies", "at least one experiment is required", 0});
    if (static_cast<Index>(inst.payoffs.size()) != k_count)
        rep.violations.push_back({"payoffs", "expected " + std::to_string(k_count) + " payoff tables, got " +
                                                 std::to_string(inst.payoffs.size()),
                                  0});

    const Index na = inst.actions();
    for (std::size_t k = 0; k < inst.payoffs.size(); ++k) {
        const auto& u = inst.payoffs[k];
        const std::string path = at("payoffs", Index(k));
        if (u.rows() != nx || u.cols() != na || na == 0)
            rep.violations.push_back({path, "payoff table must be |X| x |A| with |A| > 0", 0});
        check_finite(u, path, rep);
    }

    const Index ny = inst.observations();
    for (std::size_t k = 0; k < inst.strategies.size(); ++k) {
        const auto& s = inst.strategies[k];
        const std::string path = at("strategies", Index(k));
        if (s.rows() != nx || s.cols() != ny || ny == 0) {
            rep.violations.push_back({path, "strategy must be |X| x |Y| with |Y| > 0", 0});
            continue;
        }
        check_finite(s, path, rep);
        check_stochastic_rows(s, path, rep);
    }

    if (!inst.policies.empty()) {
        if (static_cast<Index>(inst.policies.size()) != k_count)
            rep.violations.push_back({"policies", "expected one policy per experiment", 0});
        for (std::size_t k = 0; k < inst.policies.size(); ++k) {
            const auto& p = inst.policies[k];
            if (static_cast<Index>(p.size()) != ny)
                rep.violations.push_back({at("policies", Index(k)), "policy must assign an action to every observation", 0});
            for (std::size_t y = 0; y < p.size(); ++y)
                if (p[y] < 0 || p[y] >= na)
                    rep.violations.push_back({at("policies", Index(k), Index(y)), "action index out of range", 0});
        }
    }
    return rep;
}

ValidationReport validate(const AnyInstance& inst) {
    return std::visit([](const auto& i) { return validate(i); }, inst);
}

std::string kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::Classical: return "classical";
        case InstanceKind::Crp: return "crp";
        case InstanceKind::Bayes: return "bayes";
    }
    return "unknown";
}

InstanceKind kind_of(const AnyInstance& inst) { return static_cast<InstanceKind>(inst.index()); }

AnyInstance parse_instance(const std::string& text, std::optional<InstanceKind> expected, const LoadOptions& opts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw SchemaError("top-level JSON value must be an object");
    const json& kind_field = require(doc, "kind");
    if (!kind_field.is_string()) throw SchemaError("\"kind\" must be a string");
    const std::string kind = kind_field.get<std::string>();

    AnyInstance inst;
    if (kind == "classical") {
        ClassicalInstance c;
        c.bundles = matrix_from(require(doc, "bundles"), "bundles");
        c.budget_evals = matrix_from(require(doc, "budget_evals"), "budget_evals");
        inst = std::move(c);
    } else if (kind == "crp") {
        CrpInstance c;
        c.utility_evals = matrix_from(require(doc, "utility_evals"), "utility_evals");
        if (auto it = doc.find("bundles"); it != doc.end() && !it->is_null())
            c.bundles = matrix_from(*it, "bundles");
        inst = std::move(c);
    } else if (kind == "bayes") {
        BayesInstance b;
        b.prior = vector_from(require(doc, "prior"), "prior");
        b.payoffs = tables_from(require(doc, "payoffs"), "payoffs");
        b.strategies = tables_from(require(doc, "strategies"), "strategies");
        if (auto it = doc.find("policies"); it != doc.end() && !it->is_null()) {
            if (!it->is_array()) throw SchemaError("policies: expected an array");
            for (const auto& p : *it) {
                if (!p.is_array()) throw SchemaError("policies: expected arrays of action indices");
                std::vector<Index> policy;
                for (const auto& a : p) {
                    if (!a.is_number_integer()) throw SchemaError("policies: action indices must be integers");
                    policy.push_back(a.get<Index>());
                }
                b.policies.push_back(std::move(policy));
            }
        }
        if (opts.renormalize) renormalize(b);
        inst = std::move(b);
    } else {
        throw SchemaError("unknown kind \"" + kind + "\"");
    }

    if (expected && kind_of(inst) != *expected)
        throw SchemaError("expected a " + kind_name(*expected) + " instance, got \"" + kind + "\"");

    ValidationReport rep = validate(inst);
    if (!rep.ok()) throw ValidationError(std::move(rep));
    return inst;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

AnyInstance load_instance(const std::filesystem::path& path, std::optional<InstanceKind> expected,
                          const LoadOptions& opts) {
    return parse_instance(read_file(path), expected, opts);
}

ClassicalInstance load_classical(const std::filesystem::path& path, const LoadOptions& opts) {
    return std::get<ClassicalInstance>(load_instance(path, InstanceKind::Classical, opts));
}

CrpInstance load_crp(const std::filesystem::path& path, const LoadOptions& opts) {
    return std::get<CrpInstance>(load_instance(path, InstanceKind::Crp, opts));
}

BayesInstance load_bayes(const std::filesystem::path& path, const LoadOptions& opts) {
    return std::get<BayesInstance>(load_instance(path, InstanceKind::Bayes, opts));
}

std::string to_json(const AnyInstance& inst, int indent) {
    json doc;
    std::visit(
        [&doc](const auto& i) {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, ClassicalInstance>) {
                doc["kind"] = "classical";
                doc["bundles"] = to_json_matrix(i.bundles);
                doc["budget_evals"] = to_json_matrix(i.budget_evals);
            } else if constexpr (std::is_same_v<T, CrpInstance>) {
                doc["kind"] = "crp";
                doc["utility_evals"] = to_json_matrix(i.utility_evals);
                if (i.bundles) doc["bundles"] = to_json_matrix(*i.bundles);
            } else {
                doc["kind"] = "bayes";
                doc["prior"] = to_json_vector(i.prior);
                json payoffs = json::array(), strategies = json::array();
                for (const auto& u : i.payoffs) payoffs.push_back(to_json_matrix(u));
                for (const auto& s : i.strategies) strategies.push_back(to_json_matrix(s));
                doc["payoffs"] = std::move(payoffs);
                doc["strategies"] = std::move(strategies);
                if (!i.policies.empty()) doc["policies"] = i.policies;
            }
        },
        inst);
    return doc.dump(indent);
}

void save_instance(const std::filesystem::path& path, const AnyInstance& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << to_json(inst) << '\n';
}

}  // namespace revpref
