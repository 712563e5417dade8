#include "revpref/bayesian.hpp"
#include "revpref/blackwell.hpp"
#include "revpref/classical.hpp"
#include "revpref/datasets.hpp"
#include "revpref/garp.hpp"
#include "revpref/synth.hpp"
#include "revpref/unify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

using namespace revpref;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

const char* const kCaveat =
    "note: monotonicity and local non-satiation of the supplied functions cannot be verified from finite "
    "evaluations; they are assumed";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

json vec_json(const VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json mat_json(const MatrixXd& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i).transpose()));
    return rows;
}

MatrixXd mat_from(const json& v, const std::string& what) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) throw SchemaError(what + ": expected a non-empty array of rows");
    MatrixXd m(static_cast<Index>(v.size()), static_cast<Index>(v[0].size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array() || v[i].size() != v[0].size()) throw SchemaError(what + ": ragged rows");
        for (std::size_t j = 0; j < v[i].size(); ++j) {
            if (!v[i][j].is_number()) throw SchemaError(what + ": expected numbers");
            m(static_cast<Index>(i), static_cast<Index>(j)) = v[i][j].get<double>();
        }
    }
    return m;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

struct CheckOptions {
    std::string test;
    std::string input;
    std::string batch;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    Index samples = 1000;
    bool renormalize = false;
    bool json_out = false;
};

struct Report {
    std::string command;
    std::string digest;
    bool pass = false;
    json certificate;  // null when absent
    json witness;
    json details;
    std::optional<double> residual;
    std::string message;
    bool caveat = false;
    double ms = 0;
};

json report_json(const Report& r) {
    json out;
    out["command"] = r.command;
    out["input_digest"] = r.digest;
    out["verdict"] = r.pass ? "pass" : "fail";
    out["certificate"] = r.certificate;
    out["residuals"] = r.residual ? json{{"max", *r.residual + 0.0}} : json(nullptr);
    out["witness"] = r.witness;
    if (!r.details.is_null()) out["details"] = r.details;
    if (!r.message.empty()) out["message"] = r.message;
    out["ms"] = r.ms;
    out["version"] = REVPREF_VERSION;
    return out;
}

void print_text(const Report& r, std::ostream& os) {
    os << r.command << ": " << (r.pass ? "pass" : "fail") << '\n';
    if (!r.message.empty()) os << "  " << r.message << '\n';
    if (!r.certificate.is_null()) os << "  certificate: " << r.certificate.dump() << '\n';
    if (r.residual) os << "  max residual: " << *r.residual + 0.0 << '\n';
    if (!r.witness.is_null()) os << "  witness: " << r.witness.dump() << '\n';
    if (!r.details.is_null()) os << "  details: " << r.details.dump() << '\n';
    os << "  input: " << r.digest << "  (" << r.ms << " ms)\n";
}

double tol_or(const CheckOptions& o, double fallback) { return o.tol.value_or(fallback); }

const BayesInstance& need_bayes(const AnyInstance& inst, const std::string& test) {
    if (const auto* b = std::get_if<BayesInstance>(&inst)) return *b;
    throw UsageError("check " + test + " expects a bayes instance, got " + kind_name(kind_of(inst)));
}

json garp_witness(const GarpViolation& v) {
    return json{{"k", v.k}, {"j", v.j}, {"chain", v.chain}, {"reversal", v.reversal}};
}

void check_garp_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    MatrixXd afford;
    if (const auto* c = std::get_if<ClassicalInstance>(&inst)) afford = c->budget_evals;
    else if (const auto* u = std::get_if<CrpInstance>(&inst)) afford = crp_affordability(u->utility_evals);
    else afford = crp_affordability(j_matrix(std::get<BayesInstance>(inst)));
    const GarpReport rep = check_garp(afford, tol_or(o, kVerifyTol));
    r.pass = rep.holds;
    if (rep.violation) r.witness = garp_witness(*rep.violation);
    r.caveat = !std::holds_alternative<BayesInstance>(inst);
}

void check_afriat_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const auto* c = std::get_if<ClassicalInstance>(&inst);
    if (!c) throw UsageError("check afriat expects a classical instance, got " + kind_name(kind_of(inst)));
    r.caveat = true;
    const auto cert = afriat_feasibility(*c);
    if (!cert) {
        r.pass = false;
        if (const GarpReport g = check_garp(c->budget_evals); g.violation) r.witness = garp_witness(*g.violation);
        return;
    }
    r.residual = afriat_max_residual(*cert, c->budget_evals);
    r.pass = *r.residual <= tol_or(o, kVerifyTol);
    r.certificate = {{"values", vec_json(cert->values)}, {"multipliers", vec_json(cert->multipliers)}};
}

void check_crp_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    MatrixXd u;
    if (const auto* c = std::get_if<CrpInstance>(&inst)) u = c->utility_evals;
    else if (const auto* b = std::get_if<BayesInstance>(&inst)) u = map_to_crp(*b).utility_evals;
    else throw UsageError("check crp expects a crp or bayes instance, got classical");
    r.caveat = std::holds_alternative<CrpInstance>(inst);
    const auto cert = crp_feasibility(u);
    if (!cert) {
        r.pass = false;
        if (const GarpReport g = check_garp(crp_affordability(u)); g.violation) r.witness = garp_witness(*g.violation);
        return;
    }
    r.residual = -crp_min_slack(*cert, u);
    r.pass = *r.residual <= tol_or(o, kVerifyTol);
    r.certificate = {{"values", vec_json(cert->values)}, {"multipliers", vec_json(cert->multipliers)}};
}

void check_nias_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const BayesInstance& b = need_bayes(inst, "nias");
    if (b.policies.empty()) throw UsageError("check nias needs observed \"policies\" in the instance");
    r.pass = true;
    double worst = -std::numeric_limits<double>::infinity();
    for (Index k = 0; k < b.size(); ++k) {
        const NiasReport rep = check_nias(b, k, b.policies[static_cast<std::size_t>(k)], tol_or(o, kVerifyTol));
        worst = std::max(worst, rep.worst_gain);
        if (!rep.holds && r.pass) {
            r.pass = false;
            r.witness = {{"experiment", k}, {"observation", rep.observation}, {"action", rep.action},
                         {"gain", rep.worst_gain}};
        }
    }
    r.residual = worst;
}

void check_niac_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const MatrixXd jm = j_matrix(need_bayes(inst, "niac-cycles"));
    const NiacReport rep = check_niac_cycles(jm, tol_or(o, kVerifyTol));
    r.pass = rep.holds;
    if (!rep.holds) {
        r.witness = {{"cycle", rep.cycle}, {"weight", rep.cycle_weight}};
        return;
    }
    if (const auto cert = brp_feasibility_unit_lambda(jm)) {
        r.certificate = {{"values", vec_json(cert->costs)}, {"multipliers", vec_json(cert->multipliers)}};
        r.residual = -brp_min_slack(*cert, jm);
    }
}

void check_brp_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const MatrixXd jm = j_matrix(need_bayes(inst, "brp"));
    const auto cert = brp_feasibility(jm);
    if (!cert) {
        r.pass = false;
        const NiacReport niac = check_niac_cycles(jm);
        if (!niac.holds) r.witness = {{"cycle", niac.cycle}, {"weight", niac.cycle_weight}};
        if (const GarpReport g = check_garp(crp_affordability(jm)); g.violation)
            r.witness["garp"] = garp_witness(*g.violation);
        return;
    }
    r.residual = -brp_min_slack(*cert, jm);
    r.pass = *r.residual <= tol_or(o, kVerifyTol);
    r.certificate = {{"values", vec_json(cert->costs)}, {"multipliers", vec_json(cert->multipliers)}};
}

void check_unify_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const UnificationReport rep = verify_equivalence(need_bayes(inst, "unify"));
    const double tol = tol_or(o, kVerifyTol);
    r.details = {{"brp_verdict", rep.brp_verdict},
                 {"crp_verdict", rep.crp_verdict},
                 {"verdict_match", rep.verdict_match},
                 {"max_cost_discrepancy", rep.max_cost_discrepancy}};
    if (rep.brp_verdict) r.details["brp_to_crp_slack"] = rep.brp_to_crp_slack;
    if (rep.crp_verdict) r.details["crp_to_brp_slack"] = rep.crp_to_brp_slack;
    if (!rep.cost_values_at_data.empty()) {
        json pairs = json::array();
        for (const auto& [c, g] : rep.cost_values_at_data) pairs.push_back({c, g});
        r.details["cost_values_at_data"] = pairs;
    }
    if (rep.certificate) {
        r.certificate = {{"values", vec_json(rep.certificate->costs)},
                         {"multipliers", vec_json(rep.certificate->multipliers)}};
        r.residual = std::max(-rep.brp_to_crp_slack, rep.crp_verdict ? -rep.crp_to_brp_slack : 0.0);
    }
    r.pass = rep.verdict_match && rep.max_cost_discrepancy <= tol &&
             (!rep.brp_verdict || rep.brp_to_crp_slack >= -tol) && (!rep.crp_verdict || rep.crp_to_brp_slack >= -tol);
}

void check_audit_cmd(const AnyInstance& inst, const CheckOptions& o, Report& r) {
    const BayesInstance& b = need_bayes(inst, "audit-axioms");
    const MatrixXd jm = j_matrix(b);
    const auto cert = brp_feasibility(jm);
    if (!cert) {
        r.pass = false;
        r.message = "the generalized NIAC system is infeasible, so there is no cost to audit";
        return;
    }
    const InfoCost cost = normalize_cost(reconstruct_info_cost(*cert, jm, b), b);
    const AxiomAuditReport rep = audit_axioms(cost, b, o.samples, o.seed, tol_or(o, kAxiomTol));
    auto stat = [](const AuditStat& s) {
        return json{{"samples", s.samples}, {"violations", s.violations}, {"worst_margin", s.worst_margin}};
    };
    r.details = {{"k1", stat(rep.k1)}, {"k2", stat(rep.k2)}, {"k3_value", rep.k3_value}, {"normalizer", cost.normalizer()}};
    r.certificate = {{"values", vec_json(cert->costs)}, {"multipliers", vec_json(cert->multipliers)}};
    r.residual = std::max(rep.k1.worst_margin, rep.k2.worst_margin);
    r.pass = rep.passed();
}

void check_blackwell_cmd(const std::string& text, const CheckOptions& o, Report& r) {
    const json doc = parse_json(text);
    if (!doc.is_object() || doc.value("kind", "") != "blackwell_pair")
        throw SchemaError("check blackwell expects {\"kind\": \"blackwell_pair\", \"alpha\": ..., \"alpha_bar\": ...}");
    if (!doc.contains("alpha") || !doc.contains("alpha_bar")) throw SchemaError("missing \"alpha\" or \"alpha_bar\"");
    const MatrixXd alpha = mat_from(doc["alpha"], "alpha");
    const MatrixXd alpha_bar = mat_from(doc["alpha_bar"], "alpha_bar");
    const auto w = check_dominance(alpha, alpha_bar, tol_or(o, kFeasTol));
    r.pass = w.has_value();
    if (w) {
        r.witness = {{"garbling", mat_json(w->garbling)}};
        r.residual = (alpha * w->garbling - alpha_bar).cwiseAbs().maxCoeff();
    }
}

Report run_check(const CheckOptions& o, const fs::path& input) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.command = "check " + o.test;
    const std::string text = read_file(input);
    r.digest = sha256_hex(text);
    if (o.test == "blackwell") {
        check_blackwell_cmd(text, o, r);
    } else {
        LoadOptions lo;
        lo.renormalize = o.renormalize;
        const AnyInstance inst = parse_instance(text, std::nullopt, lo);
        if (o.test == "garp") check_garp_cmd(inst, o, r);
        else if (o.test == "afriat") check_afriat_cmd(inst, o, r);
        else if (o.test == "crp") check_crp_cmd(inst, o, r);
        else if (o.test == "nias") check_nias_cmd(inst, o, r);
        else if (o.test == "niac-cycles") check_niac_cmd(inst, o, r);
        else if (o.test == "brp") check_brp_cmd(inst, o, r);
        else if (o.test == "unify") check_unify_cmd(inst, o, r);
        else if (o.test == "audit-axioms") check_audit_cmd(inst, o, r);
        else throw UsageError("unknown test " + o.test);
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

int cmd_check(const CheckOptions& o) {
    if (o.input.empty() == o.batch.empty()) throw UsageError("check needs exactly one of --input or --batch");
    if (!o.input.empty()) {
        const Report r = run_check(o, o.input);
        if (o.json_out) std::cout << report_json(r).dump(2) << '\n';
        else print_text(r, std::cout);
        if (r.caveat) std::cerr << kCaveat << '\n';
        return r.pass ? kExitPass : kExitFail;
    }

    if (!fs::is_directory(o.batch)) throw UsageError("--batch " + o.batch + " is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.batch))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    int code = kExitPass;
    bool caveat = false;
    json all = json::array();
    for (const auto& f : files) {
        try {
            const Report r = run_check(o, f);
            caveat |= r.caveat;
            if (!r.pass) code = std::max(code, kExitFail);
            json j = report_json(r);
            j["input"] = f.filename().string();
            if (o.json_out) all.push_back(j);
            else std::cout << f.filename().string() << ": " << (r.pass ? "pass" : "fail") << '\n';
        } catch (const std::exception& e) {
            code = kExitUsage;
            if (o.json_out) all.push_back({{"input", f.filename().string()}, {"error", e.what()}});
            else std::cout << f.filename().string() << ": error: " << e.what() << '\n';
        }
    }
    if (o.json_out) std::cout << all.dump(2) << '\n';
    if (caveat) std::cerr << kCaveat << '\n';
    return code;
}

struct GenerateOptions {
    std::string family;
    Index k = 4, m = 2, x = 3, y = 3, a = 3;
    std::uint64_t seed = 0;
    Index grid = 40;
    double cost_scale = 0.5;
    double lambda_max = 3.0;
    std::string output;
};

int cmd_generate(const GenerateOptions& o) {
    GeneratorConfig cfg;
    cfg.seed = o.seed;
    cfg.experiments = o.k;
    cfg.goods = o.m;
    cfg.states = o.x;
    cfg.observations = o.y;
    cfg.actions = o.a;
    cfg.grid_size = o.grid;
    cfg.cost_scale = o.cost_scale;
    cfg.lambda_max = o.lambda_max;

    AnyInstance inst;
    try {
        if (o.family == "classical") inst = gen_classical(cfg);
        else if (o.family == "bayes-rational") inst = gen_bayes_rational(cfg);
        else inst = gen_niac_violation(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const std::string text = to_json(inst) + "\n";
    const std::string digest = sha256_hex(text);
    if (o.output.empty()) {
        std::cout << text;
        std::cerr << digest << '\n';
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw UsageError("cannot write " + o.output);
        out << text;
        std::cout << digest << '\n';
    }
    return kExitPass;
}

struct ReconstructOptions {
    std::string target;
    std::string input;
    std::string output;
    std::string eval;
    bool raw = false;
    bool renormalize = false;
};

std::vector<VectorXd> eval_rows(const json& doc, const char* key, Index k) {
    if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("eval file needs \"") + key + "\"");
    const MatrixXd m = mat_from(doc[key], key);
    if (m.cols() != k) throw SchemaError(std::string(key) + ": expected " + std::to_string(k) + " entries per row");
    std::vector<VectorXd> out;
    for (Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i).transpose());
    return out;
}

int cmd_reconstruct(const ReconstructOptions& o) {
    const std::string text = read_file(o.input);
    LoadOptions lo;
    lo.renormalize = o.renormalize;
    const AnyInstance inst = parse_instance(text, std::nullopt, lo);
    json artifact;
    artifact["input_digest"] = sha256_hex(text);
    artifact["version"] = REVPREF_VERSION;
    json values = json::array();
    const std::optional<json> eval_doc = o.eval.empty() ? std::nullopt : std::optional<json>(parse_json(read_file(o.eval)));

    if (o.target == "cost") {
        const BayesInstance& b = need_bayes(inst, "reconstruct cost");
        const MatrixXd jm = j_matrix(b);
        const auto cert = brp_feasibility(jm);
        if (!cert) {
            std::cerr << "the generalized NIAC system is infeasible; no rationalizing cost exists\n";
            return kExitFail;
        }
        InfoCost cost = reconstruct_info_cost(*cert, jm, b);
        if (!o.raw) cost = normalize_cost(cost, b);
        artifact["kind"] = "info_cost";
        artifact["offsets"] = vec_json(cost.offsets());
        artifact["multipliers"] = vec_json(cost.multipliers());
        artifact["anchors"] = vec_json(cost.anchors());
        artifact["normalizer"] = cost.normalizer();
        if (eval_doc) {
            if (!eval_doc->is_object() || !eval_doc->contains("kernels")) throw SchemaError("eval file needs \"kernels\"");
            const json& kernels = (*eval_doc)["kernels"];
            if (!kernels.is_array()) throw SchemaError("kernels: expected an array of matrices");
            for (std::size_t i = 0; i < kernels.size(); ++i) {
                const MatrixXd kernel = mat_from(kernels[i], "kernels[" + std::to_string(i) + "]");
                if (kernel.rows() != b.states() || kernel.cols() != b.observations())
                    throw SchemaError("kernels[" + std::to_string(i) + "]: expected a states x observations matrix");
                if (stochastic_defect(kernel) > 1e-12)
                    throw ValidationError(ValidationReport{{{"kernels[" + std::to_string(i) + "]", "kernel is not row-stochastic",
                                                             stochastic_defect(kernel)}}});
                values.push_back(cost(kernel));
            }
        }
    } else if (o.target == "utility") {
        const auto* c = std::get_if<ClassicalInstance>(&inst);
        if (!c) throw UsageError("reconstruct utility expects a classical instance");
        const auto cert = afriat_feasibility(*c);
        if (!cert) {
            std::cerr << "the Afriat system is infeasible; no rationalizing utility exists\n";
            return kExitFail;
        }
        artifact["kind"] = "piecewise_utility";
        artifact["offsets"] = vec_json(cert->values);
        artifact["multipliers"] = vec_json(cert->multipliers);
        if (eval_doc)
            for (const VectorXd& g : eval_rows(*eval_doc, "g_evals", c->size())) values.push_back(reconstruct_utility(*cert, g));
        std::cerr << kCaveat << '\n';
    } else {
        const auto* c = std::get_if<CrpInstance>(&inst);
        if (!c) throw UsageError("reconstruct budget expects a crp instance");
        const auto cert = crp_feasibility(*c);
        if (!cert) {
            std::cerr << "the CRP system is infeasible; no rationalizing budget cost exists\n";
            return kExitFail;
        }
        const VectorXd diag = c->utility_evals.diagonal();
        artifact["kind"] = "piecewise_budget_cost";
        artifact["offsets"] = vec_json(cert->values);
        artifact["multipliers"] = vec_json(cert->multipliers);
        artifact["anchors"] = vec_json(diag);
        if (eval_doc)
            for (const VectorXd& u : eval_rows(*eval_doc, "u_evals", c->size()))
                values.push_back(reconstruct_budget_cost(*cert, u, diag));
        std::cerr << kCaveat << '\n';
    }

    if (!o.output.empty()) {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw UsageError("cannot write " + o.output);
        out << artifact.dump(2) << '\n';
    }
    if (eval_doc) std::cout << json{{"values", values}}.dump(2) << '\n';
    else if (o.output.empty()) std::cout << artifact.dump(2) << '\n';
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Revealed-preference tests for consumption and attention data"};
    app.set_version_flag("--version", REVPREF_VERSION);
    app.require_subcommand(1);

    CheckOptions check;
    auto* check_cmd = app.add_subcommand("check", "Run a rationalizability test on a dataset");
    check_cmd->add_option("test", check.test, "Test to run")
        ->required()
        ->check(CLI::IsMember({"garp", "afriat", "crp", "nias", "niac-cycles", "brp", "blackwell", "unify",
                               "audit-axioms"}));
    check_cmd->add_option("--input", check.input, "Dataset file");
    check_cmd->add_option("--batch", check.batch, "Run on every .json file in a directory");
    check_cmd->add_option("--tol", check.tol, "Verification tolerance (defaults follow the library)");
    check_cmd->add_option("--seed", check.seed, "Seed for sampled audits");
    check_cmd->add_option("--samples", check.samples, "Samples per axiom for audit-axioms")->check(CLI::PositiveNumber);
    check_cmd->add_flag("--renormalize", check.renormalize, "Rescale prior and kernel rows to sum to one");
    check_cmd->add_flag("--json", check.json_out, "Print a JSON report");

    GenerateOptions gen;
    auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset");
    gen_cmd->add_option("family", gen.family, "Dataset family")
        ->required()
        ->check(CLI::IsMember({"classical", "bayes-rational", "niac-violation"}));
    gen_cmd->add_option("--k", gen.k, "Number of experiments");
    gen_cmd->add_option("--m", gen.m, "Number of goods (classical)");
    gen_cmd->add_option("--x", gen.x, "Number of states");
    gen_cmd->add_option("--y", gen.y, "Number of observations");
    gen_cmd->add_option("--a", gen.a, "Number of actions");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("--grid", gen.grid, "Candidate strategies per instance");
    gen_cmd->add_option("--cost-scale", gen.cost_scale, "Multiplier on mutual information");
    gen_cmd->add_option("--lambda-max", gen.lambda_max, "Upper bound of the multipliers (1 gives standard NIAC data)");
    gen_cmd->add_option("--output", gen.output, "Output file (stdout when omitted)");

    ReconstructOptions rec;
    auto* rec_cmd = app.add_subcommand("reconstruct", "Build a rationalizing cost or utility");
    rec_cmd->add_option("target", rec.target, "What to reconstruct")
        ->required()
        ->check(CLI::IsMember({"cost", "utility", "budget"}));
    rec_cmd->add_option("--input", rec.input, "Dataset file")->required();
    rec_cmd->add_option("--output", rec.output, "Artifact file");
    rec_cmd->add_option("--eval", rec.eval, "Points to evaluate: {\"kernels\"}, {\"g_evals\"} or {\"u_evals\"}");
    rec_cmd->add_flag("--raw", rec.raw, "Skip normalization at the uninformative strategy (cost only)");
    rec_cmd->add_flag("--renormalize", rec.renormalize, "Rescale prior and kernel rows to sum to one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*check_cmd) return cmd_check(check);
        if (*gen_cmd) return cmd_generate(gen);
        return cmd_reconstruct(rec);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}
