#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hochwerk/records.hpp"

namespace hochwerk {

// One experiment file: algebras, bimodules, triangular assemblies, and the
// tasks to run against them. Everything is validated on ingest, so a parsed
// instance is algebraically sound by construction.
struct Task {
    std::string op;          // cohomology|homology|complex_report|trace|ext|tor|verify
    std::string algebra;
    std::string coeff;
    std::string side = "cochain";
    std::string suite;
    std::string triangular;  // empty = every triangular in the file
    std::string m, y, x;     // ext / tor arguments
    Index max_degree = 3;
    Index nesting = 1;
    Index degree = 2;        // corner-module report degree
};

struct InstanceFile {
    std::map<std::string, AlgebraPtr> algebras;  // triangular names included
    std::map<std::string, Bimodule> bimodules;
    std::map<std::string, TriangularData> triangulars;
    std::vector<Task> tasks;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Rat parse_rat_field(const Json& j, const std::string& where) {
    if (!j.is_string()) throw ParseError(where + ": rationals must be \"p/q\" strings");
    try {
        return rat_parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

inline std::vector<Rat> parse_rat_vector(const Json& j, Index expect,
                                         const std::string& where) {
    if (!j.is_array() || (Index)j.size() != expect)
        throw ParseError(where + ": expected an array of " + std::to_string(expect) +
                         " rationals");
    std::vector<Rat> v;
    v.reserve(expect);
    for (Index i = 0; i < expect; ++i)
        v.push_back(parse_rat_field(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline RatMatrix parse_matrix(const Json& j, Index rows, Index cols, const std::string& where) {
    if (!j.is_array() || (Index)j.size() != rows)
        throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    RatMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        std::vector<Rat> row = parse_rat_vector(j[r], cols, where + "[" + std::to_string(r) + "]");
        for (Index c = 0; c < cols; ++c) m.add(r, c, row[c]);
    }
    return m;
}

inline Index parse_count(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw ParseError(where + ": expected a nonnegative integer");
    long long v = j.get<long long>();
    if (v > (1 << 20)) throw ParseError(where + ": implausibly large");
    return (Index)v;
}

}  // namespace detail

inline InstanceFile parse_instance_text(const std::string& text, const std::string& origin) {
    using detail::Json;
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError(origin + ": not valid JSON");
    if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");

    InstanceFile inst;
    auto taken = [&](const std::string& name) {
        return inst.algebras.count(name) || inst.bimodules.count(name) ||
               inst.triangulars.count(name);
    };

    if (doc.contains("algebras")) {
        for (const auto& [name, spec] : doc["algebras"].items()) {
            const std::string where = origin + ": algebra " + name;
            if (taken(name)) throw ParseError(where + ": duplicate name");
            if (!spec.is_object() || !spec.contains("dim") || !spec.contains("mult") ||
                !spec.contains("unit"))
                throw ParseError(where + ": needs dim, mult, unit");
            Index dim = detail::parse_count(spec["dim"], where + ".dim");
            Algebra a = make_algebra(dim);
            const Json& mult = spec["mult"];
            if (!mult.is_array() || (Index)mult.size() != dim)
                throw ParseError(where + ".mult: expected " + std::to_string(dim) + " rows");
            for (Index i = 0; i < dim; ++i) {
                if (!mult[i].is_array() || (Index)mult[i].size() != dim)
                    throw ParseError(where + ".mult: row " + std::to_string(i) + " malformed");
                for (Index j = 0; j < dim; ++j)
                    a.mult[i][j] = sv_from_dense(detail::parse_rat_vector(
                        mult[i][j], dim,
                        where + ".mult[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
            }
            a.unit = detail::parse_rat_vector(spec["unit"], dim, where + ".unit");
            validate(a);
            inst.algebras.emplace(name, std::make_shared<Algebra>(std::move(a)));
        }
    }

    if (doc.contains("bimodules")) {
        for (const auto& [name, spec] : doc["bimodules"].items()) {
            const std::string where = origin + ": bimodule " + name;
            if (taken(name)) throw ParseError(where + ": duplicate name");
            if (!spec.is_object() || !spec.contains("left") || !spec.contains("right") ||
                !spec.contains("dim") || !spec.contains("left_act") || !spec.contains("right_act"))
                throw ParseError(where + ": needs left, right, dim, left_act, right_act");
            auto find_alg = [&](const Json& j, const char* field) {
                if (!j.is_string()) throw ParseError(where + ": " + field + " must be a name");
                auto it = inst.algebras.find(j.get<std::string>());
                if (it == inst.algebras.end())
                    throw ParseError(where + ": unknown algebra '" + j.get<std::string>() + "'");
                return it->second;
            };
            Bimodule x;
            x.left_alg = find_alg(spec["left"], "left");
            x.right_alg = find_alg(spec["right"], "right");
            x.dim = detail::parse_count(spec["dim"], where + ".dim");
            auto parse_acts = [&](const Json& j, Index count, const char* field) {
                if (!j.is_array() || (Index)j.size() != count)
                    throw ParseError(where + ": " + field + " needs " + std::to_string(count) +
                                     " matrices");
                std::vector<RatMatrix> acts;
                for (Index i = 0; i < count; ++i)
                    acts.push_back(detail::parse_matrix(
                        j[i], x.dim, x.dim,
                        where + "." + field + "[" + std::to_string(i) + "]"));
                return acts;
            };
            x.left_act = parse_acts(spec["left_act"], x.left_alg->dim, "left_act");
            x.right_act = parse_acts(spec["right_act"], x.right_alg->dim, "right_act");
            validate_bimodule(x);
            inst.bimodules.emplace(name, std::move(x));
        }
    }

    if (doc.contains("triangulars")) {
        for (const auto& [name, spec] : doc["triangulars"].items()) {
            const std::string where = origin + ": triangular " + name;
            if (taken(name)) throw ParseError(where + ": duplicate name");
            if (!spec.is_object() || !spec.contains("a") || !spec.contains("m") ||
                !spec.contains("b"))
                throw ParseError(where + ": needs a, m, b");
            auto alg = [&](const Json& j) {
                auto it = inst.algebras.find(j.get<std::string>());
                if (it == inst.algebras.end())
                    throw ParseError(where + ": unknown algebra '" + j.get<std::string>() + "'");
                return it->second;
            };
            auto bim = [&](const Json& j) {
                auto it = inst.bimodules.find(j.get<std::string>());
                if (it == inst.bimodules.end())
                    throw ParseError(where + ": unknown bimodule '" + j.get<std::string>() + "'");
                return it->second;
            };
            TriangularData td = build_triangular(alg(spec["a"]), bim(spec["m"]), alg(spec["b"]));
            inst.algebras.emplace(name, td.t);
            inst.triangulars.emplace(name, std::move(td));
        }
    }

    if (doc.contains("tasks")) {
        if (!doc["tasks"].is_array()) throw ParseError(origin + ": tasks must be an array");
        for (const Json& t : doc["tasks"]) {
            const std::string where = origin + ": task";
            if (!t.is_object() || !t.contains("op")) throw ParseError(where + ": needs op");
            Task task;
            task.op = t["op"].get<std::string>();
            auto opt_str = [&](const char* k, std::string& dst) {
                if (t.contains(k)) dst = t[k].get<std::string>();
            };
            auto opt_count = [&](const char* k, Index& dst) {
                if (t.contains(k)) dst = detail::parse_count(t[k], where + std::string(".") + k);
            };
            opt_str("algebra", task.algebra);
            opt_str("coeff", task.coeff);
            opt_str("side", task.side);
            opt_str("suite", task.suite);
            opt_str("triangular", task.triangular);
            opt_str("m", task.m);
            opt_str("y", task.y);
            opt_str("x", task.x);
            opt_count("max_degree", task.max_degree);
            opt_count("nesting", task.nesting);
            opt_count("degree", task.degree);
            static const std::vector<std::string> kOps = {
                "cohomology", "homology", "complex_report", "trace", "ext", "tor", "verify"};
            if (std::find(kOps.begin(), kOps.end(), task.op) == kOps.end())
                throw ParseError(where + ": unknown op '" + task.op + "'");
            inst.tasks.push_back(std::move(task));
        }
    }
    return inst;
}

inline InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

// -- task execution -----------------------------------------------------------

struct RunOptions {
    long long budget = 20000;  // cap on the largest (co)chain space dimension
    bool force = false;
};

struct RunResult {
    std::vector<Record> records;
    bool any_mismatch = false;
};

namespace detail {

inline AlgebraPtr find_algebra(const InstanceFile& inst, const std::string& name,
                               const std::string& where) {
    auto it = inst.algebras.find(name);
    if (it == inst.algebras.end())
        throw ParseError(where + ": unknown algebra '" + name + "'");
    return it->second;
}

// Coefficient grammar: a bimodule name, an algebra name (its regular
// bimodule), or NAME.m for a triangular's middle lifted to T; a trailing *
// dualizes the result.
inline Bimodule resolve_coeff(const InstanceFile& inst, const AlgebraPtr& over,
                              std::string spec, const std::string& where) {
    bool dualize = false;
    if (!spec.empty() && spec.back() == '*') {
        dualize = true;
        spec.pop_back();
    }
    Bimodule x;
    if (auto it = inst.bimodules.find(spec); it != inst.bimodules.end()) {
        x = it->second;
    } else if (auto at = inst.algebras.find(spec); at != inst.algebras.end()) {
        x = regular_bimodule(at->second);
    } else if (spec.size() > 2 && spec.substr(spec.size() - 2) == ".m") {
        auto tt = inst.triangulars.find(spec.substr(0, spec.size() - 2));
        if (tt == inst.triangulars.end())
            throw ParseError(where + ": unknown coefficient '" + spec + "'");
        x = m_as_t_bimodule(tt->second);
    } else {
        throw ParseError(where + ": unknown coefficient '" + spec + "'");
    }
    if (dualize) x = dual(x);
    if (!(*x.left_alg == *over) || !(*x.right_alg == *over))
        throw AlgebraMismatch(where + ": coefficient is not a bimodule over the algebra");
    return x;
}

inline long long pow_ll(long long base, Index e) {
    long long v = 1;
    for (Index i = 0; i < e; ++i) {
        v *= base;
        if (v > (1LL << 40)) return v;
    }
    return v;
}

inline void check_budget(long long projected, const RunOptions& opt, const std::string& what) {
    if (!opt.force && projected > opt.budget)
        throw BudgetExceeded(what + " projects a space of dimension " +
                             std::to_string(projected) + " > budget " +
                             std::to_string(opt.budget) + " (use --force to override)");
}

inline long long nested_dim(const TriangularData& td, Index level) {
    long long d = td.dim_t();
    for (Index i = 0; i < level; ++i) d += td.dim_a() + td.dim_b();
    return d;
}

inline std::vector<std::pair<std::string, const TriangularData*>> select_triangulars(
    const InstanceFile& inst, const std::string& name, const std::string& where) {
    std::vector<std::pair<std::string, const TriangularData*>> out;
    if (!name.empty()) {
        auto it = inst.triangulars.find(name);
        if (it == inst.triangulars.end())
            throw ParseError(where + ": unknown triangular '" + name + "'");
        out.emplace_back(it->first, &it->second);
    } else {
        for (const auto& [n, td] : inst.triangulars) out.emplace_back(n, &td);
    }
    if (out.empty()) throw ParseError(where + ": instance has no triangulars");
    return out;
}

}  // namespace detail

// Executes one task, appending records. Budget projections are surfaced
// before any heavy matrix is assembled.
inline void run_task(const InstanceFile& inst, const Task& task, const RunOptions& opt,
                     RunResult& result) {
    using detail::check_budget;
    using detail::pow_ll;
    const std::string where = "task '" + task.op + "'";

    auto note_record = [&](Record r) {
        if (r.contains("verdict") && r["verdict"] == "mismatch") result.any_mismatch = true;
        result.records.push_back(std::move(r));
    };

    if (task.op == "cohomology" || task.op == "homology" || task.op == "complex_report") {
        AlgebraPtr a = detail::find_algebra(inst, task.algebra, where);
        Bimodule x = detail::resolve_coeff(inst, a, task.coeff, where);
        long long projected = pow_ll(a->dim, task.max_degree + 1) * x.dim;
        check_budget(projected, opt, where + " on " + task.algebra);
        if (task.op == "cohomology") {
            note_record(dims_record("cohomology", task.algebra, task.coeff, task.max_degree,
                                    cohomology_dims(*a, x, task.max_degree)));
        } else if (task.op == "homology") {
            note_record(dims_record("homology", task.algebra, task.coeff, task.max_degree,
                                    homology_dims(*a, x, task.max_degree)));
        } else {
            if (task.side != "cochain" && task.side != "chain")
                throw ParseError(where + ": side must be cochain or chain");
            ComplexSide side =
                task.side == "cochain" ? ComplexSide::Cochain : ComplexSide::Chain;
            note_record(complex_report_record(task.algebra, task.coeff,
                                              complex_report(*a, x, side, task.max_degree)));
        }
        return;
    }

    if (task.op == "trace") {
        AlgebraPtr a = detail::find_algebra(inst, task.algebra, where);
        note_record(trace_record(task.algebra, trace_space(a).dim()));
        return;
    }

    if (task.op == "ext" || task.op == "tor") {
        auto find_bim = [&](const std::string& name) -> const Bimodule& {
            auto it = inst.bimodules.find(name);
            if (it == inst.bimodules.end())
                throw ParseError(where + ": unknown bimodule '" + name + "'");
            return it->second;
        };
        if (task.op == "ext") {
            EModule m = as_left_e_module(find_bim(task.m));
            EModule y = as_left_e_module(find_bim(task.y));
            if (!(*m.e == *y.e))
                throw AlgebraMismatch(where + ": modules live over different algebras");
            long long bar_top = (long long)(m.e->dim + 1) *
                                pow_ll(m.e->dim, task.max_degree + 1) * m.left.dim;
            check_budget(bar_top * y.left.dim, opt, where);
            std::vector<Index> dims, cross;
            for (Index n = 0; n <= task.max_degree; ++n) {
                dims.push_back(ext_dim(m.e, m.left, y.left, n));
                cross.push_back(ext_via_hochschild(m.e, m.left, y.left, n));
            }
            Record r = record_header("ext");
            r["m"] = task.m;
            r["y"] = task.y;
            r["max_degree"] = task.max_degree;
            r["dims"] = dims;
            r["hochschild_oracle"] = cross;
            r["verdict"] = dims == cross ? "match" : "mismatch";
            note_record(std::move(r));
        } else {
            EModule x = as_right_e_module(find_bim(task.x));
            EModule m = as_left_e_module(find_bim(task.m));
            if (!(*x.e == *m.e))
                throw AlgebraMismatch(where + ": modules live over different algebras");
            long long bar_top = (long long)(m.e->dim + 1) *
                                pow_ll(m.e->dim, task.max_degree + 1) * m.left.dim;
            check_budget(bar_top * x.right.dim, opt, where);
            std::vector<Index> dims;
            for (Index n = 0; n <= task.max_degree; ++n)
                dims.push_back(tor_dim(m.e, x.right, m.left, n));
            Record r = record_header("tor");
            r["x"] = task.x;
            r["m"] = task.m;
            r["max_degree"] = task.max_degree;
            r["dims"] = dims;
            r["verdict"] = "ok";
            note_record(std::move(r));
        }
        return;
    }

    if (task.op == "verify") {
        static const std::vector<std::string> kSuites = {"thm3.1", "cor3.2", "thm3.3",
                                                         "cor3.4", "cor3.5", "thm3.6",
                                                         "thm3.8", "all"};
        if (std::find(kSuites.begin(), kSuites.end(), task.suite) == kSuites.end())
            throw ParseError(where + ": unknown suite '" + task.suite + "'");
        auto tds = detail::select_triangulars(inst, task.triangular, where);
        bool all = task.suite == "all";
        const Index n = task.max_degree;

        for (const auto& [name, tdp] : tds) {
            const TriangularData& td = *tdp;
            const long long dt = td.dim_t();

            if (all || task.suite == "thm3.1") {
                Bimodule x = task.coeff.empty() ? t_dual_bimodule(td)
                                                : detail::resolve_coeff(inst, td.t, task.coeff,
                                                                        where);
                check_budget(pow_ll(dt, n + 1) * x.dim, opt, "thm3.1 on " + name);
                note_record(verification_record(verify_thm_3_1(td, x, n, name)));
            }
            if (all || task.suite == "cor3.2") {
                check_budget(pow_ll(dt, 2) * dt, opt, "cor3.2 on " + name);
                note_record(verification_record(verify_cor_3_2(td, name)));
            }
            if (all || task.suite == "thm3.3") {
                Bimodule x = task.coeff.empty() ? t_as_bimodule(td)
                                                : detail::resolve_coeff(inst, td.t, task.coeff,
                                                                        where);
                check_budget(pow_ll(dt, n + 1) * x.dim, opt, "thm3.3 on " + name);
                note_record(verification_record(verify_thm_3_3(td, x, n, name)));
            }
            if (all || task.suite == "cor3.4") {
                check_budget(pow_ll(dt, n + 1) * dt, opt, "cor3.4 on " + name);
                note_record(verification_record(verify_cor_3_4(td, n, name)));
            }
            if (all || task.suite == "cor3.5") {
                bool scalar_corners = td.dim_a() == 1 && td.dim_b() == 1;
                Index nesting = scalar_corners ? task.nesting : 0;
                long long coeff_dim = std::max<long long>(
                    td.dim_m(), detail::nested_dim(td, nesting));
                check_budget(pow_ll(dt, n + 1) * coeff_dim, opt, "cor3.5 on " + name);
                note_record(verification_record(verify_cor_3_5(td, nesting, n, name)));
            }
            if (all || task.suite == "thm3.6") {
                note_record(verification_record(verify_thm_3_6(td, name)));
            }
            if (all || task.suite == "thm3.8") {
                if (td.dim_b() != 1) {
                    if (!all)
                        throw ValidationError(
                            "thm3.8 needs a one-dimensional B corner; triangular '" + name +
                            "' has dim B = " + std::to_string(td.dim_b()));
                    Record r = record_header("verify");
                    r["theorem"] = "thm3.8";
                    r["instance"] = name;
                    r["verdict"] = "skipped";
                    r["reason"] = "B corner is not one-dimensional";
                    note_record(std::move(r));
                } else {
                    LeftModule m{td.a, td.dim_m(), td.m.left_act};
                    check_budget(pow_ll(dt, task.degree + 1) * dt, opt, "thm3.8 on " + name);
                    note_record(verification_record(verify_thm_3_8(td.a, m, task.degree, name)));
                }
            }
        }
        return;
    }

    throw ParseError(where + ": unhandled op");
}

inline RunResult run(const InstanceFile& inst, const std::vector<Task>& tasks,
                     const RunOptions& opt) {
    RunResult result;
    for (const Task& t : tasks) run_task(inst, t, opt, result);
    return result;
}

}  // namespace hochwerk
