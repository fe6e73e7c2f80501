// hochwerk -- exact (co)homology of finite-dimensional unital algebras.
//
// Subcommands run against a JSON instance file (see fixtures/ for examples):
//   run         execute the instance's task list
//   verify      theorem suites on the triangular assemblies
//   cohomology  H^n(A, X) dimensions
//   homology    H_n(A, X) dimensions
//   report      full per-degree complex report (cochain or chain side)
//   trace       dimension of the trace space
//   ext         Ext_E^n with the built-in cross-oracle
//   tor         Tor^E_n dimensions
//   validate    parse and validate only
//
// Exit codes: 0 all verdicts match, 1 mismatch, 2 input error, 3 budget.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hochwerk/instance.hpp"

namespace {

using namespace hochwerk;

long long default_budget() {
    if (const char* env = std::getenv("HOCHWERK_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (...) {
            throw ParseError("HOCHWERK_BUDGET is not an integer");
        }
    }
    return 20000;
}

struct Common {
    std::string instance;
    std::string out;
    std::string format = "table";
    long long budget = 0;
    bool force = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--instance", c.instance, "instance file (JSON)")->required();
    sub->add_option("--out", c.out, "write machine-readable records to this file");
    sub->add_option("--format", c.format, "stdout format: table or records")
        ->check(CLI::IsMember({"table", "records"}));
    sub->add_option("--budget", c.budget,
                    "cap on the largest (co)chain space dimension (default 20000, env "
                    "HOCHWERK_BUDGET)");
    sub->add_flag("--force", c.force, "run past the budget cap");
}

std::string join_dims(const Record& arr) {
    std::string s = "(";
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) s += ",";
        s += arr[i].dump();
    }
    return s + ")";
}

void print_table(const std::vector<Record>& records, std::ostream& os) {
    for (const Record& r : records) {
        std::string op = r.value("op", "?");
        std::string what;
        std::string result;
        if (op == "verify") {
            what = r.value("theorem", "?") + " on " + r.value("instance", "?");
            if (r.contains("lhs"))
                result = "lhs=" + join_dims(r["lhs"]) + " rhs=" + join_dims(r["rhs"]);
        } else if (op == "cohomology" || op == "homology") {
            what = r.value("algebra", "?") + " with " + r.value("coeff", "?");
            result = join_dims(r["dims"]);
        } else if (op == "complex_report") {
            what = r.value("algebra", "?") + " with " + r.value("coeff", "?") + " (" +
                   r.value("side", "?") + ")";
            std::string h = "H=(";
            for (std::size_t i = 0; i < r["degrees"].size(); ++i) {
                if (i) h += ",";
                h += r["degrees"][i]["homology_dim"].dump();
            }
            result = h + ") certified=" + (r["square_zero_certified"].get<bool>() ? "yes" : "no");
        } else if (op == "trace") {
            what = r.value("algebra", "?");
            result = "dim " + r["dim"].dump();
        } else if (op == "ext") {
            what = r.value("m", "?") + " -> " + r.value("y", "?");
            result = join_dims(r["dims"]) + " oracle=" + join_dims(r["hochschild_oracle"]);
        } else if (op == "tor") {
            what = r.value("x", "?") + " (x) " + r.value("m", "?");
            result = join_dims(r["dims"]);
        }
        char line[512];
        std::snprintf(line, sizeof(line), "%-14s %-34s %-44s %s", op.c_str(), what.c_str(),
                      result.c_str(), r.value("verdict", "").c_str());
        os << line << "\n";
        if (r.contains("details"))
            for (const auto& [k, v] : r["details"].items())
                os << "    " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
        if (r.contains("reason")) os << "    reason = " << r["reason"].get<std::string>() << "\n";
    }
}

int emit_and_exit_code(const Common& c, const RunResult& result) {
    if (c.format == "records") {
        for (const Record& r : result.records) std::cout << record_line(r) << "\n";
    } else {
        print_table(result.records, std::cout);
    }
    if (!c.out.empty()) {
        std::ofstream out(c.out);
        if (!out) throw ParseError("cannot open output file '" + c.out + "'");
        for (const Record& r : result.records) out << record_line(r) << "\n";
    }
    return result.any_mismatch ? 1 : 0;
}

int dispatch(const Common& c, const std::vector<Task>& tasks, bool use_file_tasks) {
    InstanceFile inst = parse_instance(c.instance);
    RunOptions opt;
    opt.budget = c.budget;
    opt.force = c.force;

    const std::vector<Task>& list = use_file_tasks ? inst.tasks : tasks;
    if (list.empty()) throw ParseError("no tasks to run");

    RunResult result;
    for (const Task& t : list) {
        auto start = std::chrono::steady_clock::now();
        std::size_t before = result.records.size();
        run_task(inst, t, opt, result);
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "# " << t.op << (t.suite.empty() ? "" : " " + t.suite) << ": "
                  << (result.records.size() - before) << " record(s) in " << ms << " ms\n";
    }
    return emit_and_exit_code(c, result);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hochwerk: exact (co)homology, Ext/Tor and trace spaces of "
                 "finite-dimensional unital algebras"};
    app.set_version_flag("--version", "hochwerk 1.0.0");
    app.require_subcommand(1);

    Common c;
    Task t;

    CLI::App* cmd_run = app.add_subcommand("run", "execute the instance file's task list");
    add_common(cmd_run, c);

    CLI::App* cmd_verify = app.add_subcommand("verify", "run theorem suites");
    add_common(cmd_verify, c);
    cmd_verify
        ->add_option("--suite", t.suite,
                     "thm3.1, cor3.2, thm3.3, cor3.4, cor3.5, thm3.6, thm3.8 or all")
        ->required();
    cmd_verify->add_option("--triangular", t.triangular, "run on one named triangular only");
    cmd_verify->add_option("--coeff", t.coeff, "override the coefficient module (thm3.1/thm3.3)");
    cmd_verify->add_option("--max-degree", t.max_degree, "top degree checked (default 3)");
    cmd_verify->add_option("--nesting", t.nesting, "tower depth for cor3.5 (default 1)");
    cmd_verify->add_option("--degree", t.degree, "degree n for thm3.8 (default 2)");

    CLI::App* cmd_coh = app.add_subcommand("cohomology", "H^n(A, X) for n = 0..max");
    add_common(cmd_coh, c);
    cmd_coh->add_option("--algebra", t.algebra)->required();
    cmd_coh->add_option("--coeff", t.coeff, "bimodule name, algebra name, NAME.m; * dualizes")
        ->required();
    cmd_coh->add_option("--max-degree", t.max_degree);

    CLI::App* cmd_hom = app.add_subcommand("homology", "H_n(A, X) for n = 0..max");
    add_common(cmd_hom, c);
    cmd_hom->add_option("--algebra", t.algebra)->required();
    cmd_hom->add_option("--coeff", t.coeff)->required();
    cmd_hom->add_option("--max-degree", t.max_degree);

    CLI::App* cmd_rep = app.add_subcommand("report", "per-degree complex report");
    add_common(cmd_rep, c);
    cmd_rep->add_option("--algebra", t.algebra)->required();
    cmd_rep->add_option("--coeff", t.coeff)->required();
    cmd_rep->add_option("--side", t.side, "cochain or chain")
        ->check(CLI::IsMember({"cochain", "chain"}));
    cmd_rep->add_option("--max-degree", t.max_degree);

    CLI::App* cmd_trace = app.add_subcommand("trace", "trace space dimension");
    add_common(cmd_trace, c);
    cmd_trace->add_option("--algebra", t.algebra)->required();

    CLI::App* cmd_ext = app.add_subcommand("ext", "Ext dimensions with the built-in oracle");
    add_common(cmd_ext, c);
    cmd_ext->add_option("--m", t.m, "left argument (bimodule name)")->required();
    cmd_ext->add_option("--y", t.y, "right argument (bimodule name)")->required();
    cmd_ext->add_option("--max-degree", t.max_degree);

    CLI::App* cmd_tor = app.add_subcommand("tor", "Tor dimensions");
    add_common(cmd_tor, c);
    cmd_tor->add_option("--x", t.x, "right module argument (bimodule name)")->required();
    cmd_tor->add_option("--m", t.m, "left module argument (bimodule name)")->required();
    cmd_tor->add_option("--max-degree", t.max_degree);

    CLI::App* cmd_val = app.add_subcommand("validate", "parse and validate the instance file");
    add_common(cmd_val, c);

    try {
        c.budget = default_budget();
        CLI11_PARSE(app, argc, argv);

        if (cmd_val->parsed()) {
            InstanceFile inst = parse_instance(c.instance);
            std::cout << "ok: " << inst.algebras.size() << " algebra(s), "
                      << inst.bimodules.size() << " bimodule(s), " << inst.triangulars.size()
                      << " triangular(s), " << inst.tasks.size() << " task(s)\n";
            return 0;
        }

        if (cmd_run->parsed()) return dispatch(c, {}, true);

        if (cmd_verify->parsed()) t.op = "verify";
        if (cmd_coh->parsed()) t.op = "cohomology";
        if (cmd_hom->parsed()) t.op = "homology";
        if (cmd_rep->parsed()) t.op = "complex_report";
        if (cmd_trace->parsed()) t.op = "trace";
        if (cmd_ext->parsed()) t.op = "ext";
        if (cmd_tor->parsed()) t.op = "tor";
        return dispatch(c, {t}, false);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
