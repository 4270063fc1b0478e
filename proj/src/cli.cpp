#include "nilherm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "nilherm/io.hpp"

namespace nilherm {

namespace {

struct CliError {
    int code;
    std::string message;
};

ComplexNilAlgebra load_algebra_or_catalog(const std::string& spec) {
    if (const CatalogEntry* e = find_catalog_entry(spec)) return e->algebra;
    return io::load_algebra_file(spec);
}

ComplexNilAlgebra load_valid_algebra(const std::string& path) {
    ComplexNilAlgebra a = load_algebra_or_catalog(path);
    if (!validate(a).valid)
        throw CliError{1, "algebra '" + a.name() + "' is invalid: d² ≠ 0"};
    return a;
}

HermitianMetric load_pd_metric(const std::string& path, int n) {
    HermitianMetric h = io::load_metric_file(path);
    if (h.n() != n)
        throw CliError{1, "metric dimension " + std::to_string(h.n()) +
                              " does not match algebra dimension " + std::to_string(n)};
    if (!h.is_positive_definite())
        throw CliError{1, "metric in '" + path + "' is not positive definite"};
    return h;
}

std::string catalog_list_text() {
    std::string out = "name                   n  abelian  sktFeasible  balancedFeasible\n";
    for (const auto& e : builtin_catalog()) {
        std::string line = e.name;
        line.resize(23, ' ');
        line += std::to_string(e.algebra.n());
        line.resize(26, ' ');
        line += e.abelian ? "yes" : "no";
        line.resize(35, ' ');
        line += e.skt_feasible ? "yes" : "no";
        line.resize(48, ' ');
        line += e.balanced_feasible ? "yes" : "no";
        out += line + "\n";
    }
    return out;
}

io::Json catalog_list_json() {
    io::Json j = io::Json::array();
    for (const auto& e : builtin_catalog()) {
        io::Json row;
        row["name"] = e.name;
        row["n"] = e.algebra.n();
        row["abelian"] = e.abelian;
        row["sktFeasible"] = e.skt_feasible;
        row["balancedFeasible"] = e.balanced_feasible;
        row["provenance"] = e.provenance;
        j.push_back(row);
    }
    return j;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariant Hermitian geometry on nilpotent Lie algebras with complex structure"};
    app.name("nilherm");
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for all randomized phases");

    std::string algebra_path, metric_path, balanced_path, skt_path, target, catalog_action,
        catalog_name;
    SearchOptions opts;

    CLI::App* cmd_validate = app.add_subcommand("validate", "check d² = 0 on every generator");
    cmd_validate->add_option("algebra", algebra_path, "algebra file or catalog name")->required();

    CLI::App* cmd_check = app.add_subcommand("check", "classify a metric (Kähler / SKT / balanced)");
    cmd_check->add_option("algebra", algebra_path)->required();
    cmd_check->add_option("--metric", metric_path, "metric file (default: identity)");

    CLI::App* cmd_search = app.add_subcommand("search", "search for SKT / balanced metrics");
    cmd_search->add_option("algebra", algebra_path)->required();
    cmd_search->add_option("--target", target, "skt | balanced | both")
        ->required()
        ->check(CLI::IsMember({"skt", "balanced", "both"}));
    cmd_search->add_option("--seeds", opts.seeds, "multistart seeds");
    cmd_search->add_option("--tol", opts.tolerance, "float-phase tolerance");
    cmd_search->add_option("--max-iter", opts.max_iter, "iterations per seed");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the torus-rigidity proof chain");
    cmd_verify->add_option("algebra", algebra_path)->required();
    cmd_verify->add_option("--balanced-metric", balanced_path, "balanced candidate (searched if omitted)");
    cmd_verify->add_option("--skt-metric", skt_path, "SKT candidate (searched if omitted)");

    CLI::App* cmd_catalog = app.add_subcommand("catalog", "built-in algebra catalog");
    cmd_catalog->add_option("action", catalog_action, "list | export")
        ->check(CLI::IsMember({"list", "export"}));
    cmd_catalog->add_option("name", catalog_name, "entry name for export");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    opts.seed = seed;
    bool structured = format == "structured";

    try {
        if (*cmd_validate) {
            ComplexNilAlgebra a = load_algebra_or_catalog(algebra_path);
            ValidationReport v = validate(a);
            if (structured)
                out << io::validation_to_json(a, v).dump(2) << "\n";
            else
                out << io::validation_to_text(a, v);
            return v.valid ? 0 : 1;
        }

        if (*cmd_check) {
            ComplexNilAlgebra a = load_valid_algebra(algebra_path);
            HermitianMetric h = metric_path.empty() ? HermitianMetric::identity(a.n())
                                                    : load_pd_metric(metric_path, a.n());
            MetricClass c = classify(h, a);
            if (structured)
                out << io::classification_to_json(c).dump(2) << "\n";
            else
                out << io::classification_to_text(c);
            return 0;
        }

        if (*cmd_search) {
            ComplexNilAlgebra a = load_valid_algebra(algebra_path);
            if (target == "skt") {
                FeasibilityReport r = find_skt_metric(a, opts);
                out << (structured ? io::report_to_json(r).dump(2) + "\n" : io::report_to_text(r));
                return 0;
            }
            if (target == "balanced") {
                FeasibilityReport r = find_balanced_metric(a, opts);
                out << (structured ? io::report_to_json(r).dump(2) + "\n" : io::report_to_text(r));
                return 0;
            }
            BothReport r = find_both(a, opts);
            out << (structured ? io::both_report_to_json(r).dump(2) + "\n"
                               : io::both_report_to_text(r));
            return r.consistent_with_theorem ? 0 : 2;
        }

        if (*cmd_verify) {
            ComplexNilAlgebra a = load_valid_algebra(algebra_path);
            std::string preamble;
            io::Json searched = io::Json::object();

            HermitianMetric g = HermitianMetric::identity(a.n());
            if (balanced_path.empty()) {
                FeasibilityReport r = find_balanced_metric(a, opts);
                if (r.witness) g = *r.witness;
                preamble += "balanced search: " + to_string(r.status) +
                            (r.witness ? "" : " (falling back to the identity metric)") + "\n";
                searched["balancedSearch"] = io::report_to_json(r);
            } else {
                g = load_pd_metric(balanced_path, a.n());
            }

            HermitianMetric gp = HermitianMetric::identity(a.n());
            if (skt_path.empty()) {
                FeasibilityReport r = find_skt_metric(a, opts);
                if (r.witness) gp = *r.witness;
                preamble += "skt search: " + to_string(r.status) +
                            (r.witness ? "" : " (falling back to the identity metric)") + "\n";
                searched["sktSearch"] = io::report_to_json(r);
            } else {
                gp = load_pd_metric(skt_path, a.n());
            }

            ProofTrace trace;
            try {
                trace = proof_chain(a, g, gp);
            } catch (const std::logic_error& e) {
                err << "theorem inconsistency detected: " << e.what() << "\n";
                return 2;
            }
            if (structured) {
                io::Json j = searched;
                j["trace"] = io::trace_to_json(trace);
                out << j.dump(2) << "\n";
            } else {
                out << preamble << io::trace_to_text(trace);
            }
            bool forced_nonabelian =
                trace.conclusion == TraceConclusion::ForcedAbelian && !a.is_abelian();
            return forced_nonabelian ? 2 : 0;
        }

        if (*cmd_catalog) {
            if (catalog_action.empty() || catalog_action == "list") {
                out << (structured ? catalog_list_json().dump(2) + "\n" : catalog_list_text());
                return 0;
            }
            const CatalogEntry* e = find_catalog_entry(catalog_name);
            if (!e) throw CliError{3, "unknown catalog entry '" + catalog_name + "'"};
            out << io::algebra_to_json(e->algebra).dump(2) << "\n";
            return 0;
        }
    } catch (const CliError& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotPositiveDefiniteError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "theorem inconsistency detected: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 3;
}

}  // namespace nilherm
