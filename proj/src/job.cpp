#include "hypo/job.hpp"

#include "hypo/analysis.hpp"
#include "hypo/classifier.hpp"
#include "hypo/counterexamples.hpp"
#include "hypo/diophantine.hpp"
#include "hypo/errors.hpp"
#include "hypo/modesolver.hpp"
#include "hypo/rational.hpp"
#include "hypo/serialize.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hypo {

using nlohmann::json;

namespace {

// Line of the first occurrence of "key" in the raw text, 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
    auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

struct Ctx {
    const std::string& text;
    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        std::string top = field.substr(0, field.find_first_of(".["));
        throw ParseError(field + ": " + what, line_of_key(text, top), field);
    }
};

void only_keys(const Ctx& ctx, const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) ctx.fail(where.empty() ? "job" : where, "expected an object");
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) ctx.fail(where.empty() ? k : where + "." + k, "unknown field");
}

int get_int(const Ctx& ctx, const json& j, const std::string& field, int lo, int hi) {
    if (!j.is_number_integer()) ctx.fail(field, "expected an integer");
    auto v = j.get<long long>();
    if (v < lo || v > hi) ctx.fail(field, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

double get_num(const Ctx& ctx, const json& j, const std::string& field) {
    if (!j.is_number()) ctx.fail(field, "expected a number");
    return j.get<double>();
}

std::string get_str(const Ctx& ctx, const json& j, const std::string& field, const std::set<std::string>& choices) {
    if (!j.is_string()) ctx.fail(field, "expected a string");
    std::string s = j.get<std::string>();
    if (!choices.empty() && !choices.count(s)) {
        std::string all;
        for (const auto& c : choices) all += (all.empty() ? "" : ", ") + c;
        ctx.fail(field, "must be one of " + all);
    }
    return s;
}

// A real entry: a number (float) or a string holding an exact rational.
struct Real {
    double value = 0.0;
    std::optional<Rational> exact;
};

Real get_real(const Ctx& ctx, const json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), std::nullopt};
    if (j.is_string()) {
        try {
            Rational r = parse_rational(j.get<std::string>());
            return {to_double(r), r};
        } catch (const Error& e) {
            ctx.fail(field, std::string("bad rational: ") + e.what());
        }
    }
    ctx.fail(field, "expected a number or a rational string");
}

TrigPoly get_rows(const Ctx& ctx, const json& j, const std::string& field) {
    if (!j.is_array()) ctx.fail(field, "expected an array of [n, re, im] rows");
    std::map<int, GaussianRational> exact;
    std::map<int, Complex> values;
    bool all_exact = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        const json& row = j[i];
        if (!row.is_array() || row.size() != 3) ctx.fail(f, "expected [n, re, im]");
        int n = get_int(ctx, row[0], f + "[0]", -100000, 100000);
        Real re = get_real(ctx, row[1], f + "[1]");
        Real im = get_real(ctx, row[2], f + "[2]");
        if (values.count(n)) ctx.fail(f + "[0]", "duplicate frequency " + std::to_string(n));
        values[n] = Complex(re.value, im.value);
        if (re.exact && im.exact)
            exact[n] = GaussianRational(*re.exact, *im.exact);
        else
            all_exact = false;
    }
    if (all_exact && !exact.empty()) return TrigPoly::exact(exact);
    return TrigPoly(values);
}

SpectralModel get_model(const Ctx& ctx, const json& j, const std::string& base_dir, json& resolved) {
    only_keys(ctx, j, "model", {"kind", "table", "table_path"});
    if (!j.contains("kind")) ctx.fail("model.kind", "missing");
    std::string kind = get_str(ctx, j["kind"], "model.kind", {"Torus1", "SU2", "CustomTable"});
    resolved = {{"kind", kind}};
    if (kind == "Torus1") return SpectralModel::torus();
    if (kind == "SU2") return SpectralModel::su2();
    try {
        if (j.contains("table")) {
            resolved["table"] = get_str(ctx, j["table"], "model.table", {});
            return parse_custom_table(j["table"].get<std::string>());
        }
        if (j.contains("table_path")) {
            std::string p = get_str(ctx, j["table_path"], "model.table_path", {});
            resolved["table_path"] = p;
            return load_custom_table(p.empty() || p[0] == '/' ? p : base_dir + "/" + p);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        ctx.fail("model", std::string("custom table: ") + e.what());
    }
    ctx.fail("model", "CustomTable needs table or table_path");
}

}  // namespace

JobSpec parse_job(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t byte = std::min<std::size_t>(e.byte, text.size());
        int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
        throw ParseError(std::string("malformed JSON: ") + e.what(), line, "");
    }
    const Ctx ctx{text};
    only_keys(ctx, j, "", {"schema", "command", "model", "c", "q", "max_label", "grid_size", "tolerances", "scan",
                           "rhs", "counterexample", "probe"});
    if (!j.contains("schema")) ctx.fail("schema", "missing (expected 1)");
    if (get_int(ctx, j["schema"], "schema", 0, 1000) != 1) ctx.fail("schema", "unsupported version (expected 1)");
    if (!j.contains("command")) ctx.fail("command", "missing");

    JobSpec job;
    job.command = get_str(ctx, j["command"], "command", {"classify", "solve", "counterexample", "probe", "verify"});
    json res = {{"schema", 1}, {"command", job.command}};

    if (j.contains("counterexample")) {
        const json& ce = j["counterexample"];
        only_keys(ctx, ce, "counterexample", {"recipe", "variant", "count", "fixture_rows", "witnesses"});
        if (ce.contains("recipe"))
            job.recipe = get_str(ctx, ce["recipe"], "counterexample.recipe",
                                 {"auto", "homogeneous_resonant", "small_gap", "sign_change"});
        if (ce.contains("variant"))
            job.variant = get_str(ctx, ce["variant"], "counterexample.variant", {"auto", "b0pos", "b0neg"});
        if (ce.contains("count")) job.count = get_int(ctx, ce["count"], "counterexample.count", 1, 10000);
        if (ce.contains("fixture_rows"))
            job.fixture_rows = get_int(ctx, ce["fixture_rows"], "counterexample.fixture_rows", 1, 12);
        if (ce.contains("witnesses")) {
            const json& w = ce["witnesses"];
            if (!w.is_array()) ctx.fail("counterexample.witnesses", "expected an array");
            for (std::size_t i = 0; i < w.size(); ++i) {
                const std::string f = "counterexample.witnesses[" + std::to_string(i) + "]";
                only_keys(ctx, w[i], f, {"label", "r", "j"});
                for (const char* k : {"label", "r", "j"})
                    if (!w[i].contains(k)) ctx.fail(f + "." + k, "missing");
                job.witnesses.emplace_back(get_int(ctx, w[i]["label"], f + ".label", -1000000, 1000000),
                                           get_int(ctx, w[i]["r"], f + ".r", 1, 100000),
                                           get_int(ctx, w[i]["j"], f + ".j", 0, 1000));
            }
        }
        json wit = json::array();
        for (auto [l, r, jj] : job.witnesses) wit.push_back({{"label", l}, {"r", r}, {"j", jj}});
        res["counterexample"] = {{"recipe", job.recipe}, {"variant", job.variant}, {"count", job.count},
                                 {"fixture_rows", job.fixture_rows}, {"witnesses", wit}};
    } else if (job.command == "counterexample" || job.command == "verify") {
        res["counterexample"] = {{"recipe", job.recipe}, {"variant", job.variant}, {"count", job.count},
                                 {"fixture_rows", job.fixture_rows}, {"witnesses", json::array()}};
    }
    // A fixture carries its own model; a probe of x alone needs none.
    const bool model_optional = (job.recipe == "small_gap" && job.fixture_rows > 0) ||
                         (job.command == "probe" && !j.contains("model") && !j.contains("c") && !j.contains("q"));

    if (j.contains("model")) {
        json m;
        job.model = get_model(ctx, j["model"], base_dir, m);
        res["model"] = m;
    } else if (!model_optional) {
        ctx.fail("model", "missing");
    }
    if (j.contains("c")) {
        job.c = get_rows(ctx, j["c"], "c");
        res["c"] = j["c"];
    } else if (!model_optional) {
        ctx.fail("c", "missing");
    }
    if (j.contains("q")) {
        const json& q = j["q"];
        if (!q.is_array() || q.size() != 2) ctx.fail("q", "expected [re, im]");
        Real re = get_real(ctx, q[0], "q[0]");
        Real im = get_real(ctx, q[1], "q[1]");
        job.q = Complex(re.value, im.value);
        if (re.exact && im.exact) job.q_exact = GaussianRational(*re.exact, *im.exact);
        res["q"] = q;
    } else if (!model_optional) {
        ctx.fail("q", "missing");
    }
    if (j.contains("max_label")) job.max_label = get_int(ctx, j["max_label"], "max_label", 1, 100000);
    if (j.contains("grid_size")) job.grid_size = get_int(ctx, j["grid_size"], "grid_size", 8, 1 << 16);
    res["max_label"] = job.max_label;
    res["grid_size"] = job.grid_size;

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        only_keys(ctx, t, "tolerances", {"residual", "quad", "resonance"});
        if (t.contains("residual")) job.residual_tol = get_num(ctx, t["residual"], "tolerances.residual");
        if (t.contains("quad")) job.quad_tol = get_num(ctx, t["quad"], "tolerances.quad");
        if (t.contains("resonance")) job.resonance_eps = get_num(ctx, t["resonance"], "tolerances.resonance");
        for (double v : {job.residual_tol, job.quad_tol, job.resonance_eps})
            if (!(v > 0.0)) ctx.fail("tolerances", "tolerances must be positive");
    }
    res["tolerances"] = {{"residual", job.residual_tol}, {"quad", job.quad_tol}, {"resonance", job.resonance_eps}};

    if (j.contains("scan")) {
        const json& s = j["scan"];
        only_keys(ctx, s, "scan", {"K", "M_grid", "stability"});
        if (s.contains("K")) job.scan_K = get_int(ctx, s["K"], "scan.K", 2, 100000000);
        if (s.contains("M_grid")) {
            if (!s["M_grid"].is_array() || s["M_grid"].empty()) ctx.fail("scan.M_grid", "expected a nonempty array");
            job.M_grid.clear();
            for (std::size_t i = 0; i < s["M_grid"].size(); ++i)
                job.M_grid.push_back(get_num(ctx, s["M_grid"][i], "scan.M_grid[" + std::to_string(i) + "]"));
        }
        if (s.contains("stability")) job.stability = get_num(ctx, s["stability"], "scan.stability");
    }
    res["scan"] = {{"K", job.scan_K}, {"M_grid", job.M_grid}, {"stability", job.stability}};

    if (j.contains("rhs")) {
        const json& r = j["rhs"];
        if (!r.is_array()) ctx.fail("rhs", "expected an array");
        for (std::size_t i = 0; i < r.size(); ++i) {
            const std::string f = "rhs[" + std::to_string(i) + "]";
            only_keys(ctx, r[i], f, {"rep", "r", "s", "rows"});
            RhsEntry e;
            if (!r[i].contains("rep")) ctx.fail(f + ".rep", "missing");
            e.rep = get_int(ctx, r[i]["rep"], f + ".rep", -10000000, 10000000);
            if (r[i].contains("r")) e.r = get_int(ctx, r[i]["r"], f + ".r", 1, 100000);
            if (r[i].contains("s")) e.s = get_int(ctx, r[i]["s"], f + ".s", 1, 100000);
            if (!r[i].contains("rows")) ctx.fail(f + ".rows", "missing");
            e.rows = get_rows(ctx, r[i]["rows"], f + ".rows");
            job.rhs.push_back(e);
        }
        res["rhs"] = r;
    } else if (job.command == "solve") {
        res["rhs"] = json::array();
    }

    if (j.contains("probe")) {
        const json& p = j["probe"];
        only_keys(ctx, p, "probe", {"x", "depth", "M"});
        if (p.contains("x")) {
            if (!p["x"].is_number() && !p["x"].is_string()) ctx.fail("probe.x", "expected a number or a string");
            job.probe_x = p["x"];
        }
        if (p.contains("depth")) job.probe_depth = get_int(ctx, p["depth"], "probe.depth", 1, 10000);
        if (p.contains("M")) job.probe_M = get_num(ctx, p["M"], "probe.M");
    }
    if (job.command == "probe")
        res["probe"] = {{"x", job.probe_x}, {"depth", job.probe_depth}, {"M", job.probe_M}};

    job.resolved = res;
    return job;
}

namespace {

struct Writer {
    std::filesystem::path dir;
    std::string job_line;
    RunResult* result;

    void json_file(const std::string& name, json body, const json& job) {
        body["job"] = job;
        std::ofstream out(dir / name);
        out << body.dump(2) << "\n";
        if (!out) throw Error("cannot write " + (dir / name).string());
        result->artifacts.push_back(name);
    }
    template <class F>
    void text_file(const std::string& name, F&& emit) {
        std::ofstream out(dir / name);
        emit(out);
        if (!out) throw Error("cannot write " + (dir / name).string());
        result->artifacts.push_back(name);
    }
    std::vector<std::pair<std::string, std::string>> meta() const { return {{"job", job_line}}; }
};

ClassifyOptions classify_options(const JobSpec& job) {
    ClassifyOptions o;
    o.max_label = job.max_label;
    o.scan_K = job.scan_K;
    o.M_grid = job.M_grid;
    o.stability = job.stability;
    return o;
}

Verdict run_classify(const JobSpec& job) {
    if (job.q_exact) return classify(*job.model, job.c, *job.q_exact, classify_options(job));
    return classify(*job.model, job.c, job.q, classify_options(job));
}

std::size_t distinct_weights(const CoefficientField& field) {
    std::set<double> w;
    for (const auto& [k, e] : field.entries()) w.insert(e.rep.weight);
    return w.size();
}

CounterexampleReport build_counterexample(const JobSpec& job, std::ostream* log) {
    CounterexampleOptions opts;
    opts.grid_size = job.grid_size;
    opts.residual_tol = job.residual_tol;
    opts.quad_tol = std::min(job.quad_tol, 1e-13);

    if (job.recipe == "small_gap" && job.fixture_rows > 0) {
        SmallGapFixture fx = small_gap_fixture(job.fixture_rows);
        return small_gap_singular(fx.model, fx.c, fx.q, fx.witnesses, opts);
    }
    std::string recipe = job.recipe;
    std::string variant = job.variant;
    if (recipe == "auto") {
        Verdict v = run_classify(job);
        if (v.decision == Decision::GloballyHypoelliptic)
            throw RecipeInapplicable("the operator is globally hypoelliptic; no singular solution exists");
        if (!v.counterexample_hint) throw RecipeInapplicable("the classifier suggests no recipe for this operator");
        const std::string& h = *v.counterexample_hint;
        if (log) *log << "recipe from classifier: " << h << "\n";
        if (h == "sign_change_b0pos" || h == "sign_change_b0neg") {
            recipe = "sign_change";
            if (variant == "auto") variant = h == "sign_change_b0pos" ? "b0pos" : "b0neg";
        } else {
            recipe = h;
        }
    }
    if (recipe == "homogeneous_resonant") return homogeneous_resonant(*job.model, job.c, job.q, job.count, opts);
    if (recipe == "small_gap") {
        if (job.witnesses.empty())
            throw RecipeInapplicable("small_gap needs counterexample.witnesses or counterexample.fixture_rows");
        std::vector<GapWitness> w;
        for (auto [l, r, j] : job.witnesses) w.push_back({l, r, j});
        return small_gap_singular(*job.model, job.c, job.q, w, opts);
    }
    if (variant == "auto") {
        auto b0 = job.c.mean().imag();
        variant = b0 >= 0.0 ? "b0pos" : "b0neg";
    }
    return sign_change_singular(*job.model, job.c, job.q, job.count,
                                variant == "b0pos" ? SignVariant::B0Pos : SignVariant::B0Neg, opts);
}

void run_body(const JobSpec& job, Writer& w, int threads, std::ostream* log, RunResult& result) {
    const json& jr = job.resolved;
    if (job.command == "classify") {
        Verdict v = run_classify(job);
        json body = to_json(v);
        body["explanation"] = explain(v);
        w.json_file("verdict.json", body, jr);
        if (log) *log << explain(v);
        result.message = to_string(v.decision);
        if (v.decision == Decision::Undecided) result.exit_code = 2;
        return;
    }
    if (job.command == "solve") {
        CoefficientField f(job.model->name(), job.grid_size);
        for (const auto& e : job.rhs) f.set(job.model->rep(e.rep), e.r, e.s, PeriodicFn(e.rows));
        SolveOptions so;
        so.grid_size = job.grid_size;
        so.quad_tol = job.quad_tol;
        so.residual_tol = job.residual_tol;
        so.resonance_eps = job.resonance_eps;
        so.threads = std::max(1, threads);
        FieldSolution sol = solve_field(*job.model, job.c, job.q, f, so);
        json diags = json::array();
        int failed = 0;
        for (const auto& d : sol.diagnostics) {
            diags.push_back(to_json(d));
            if (d.status == ModeStatus::Failed) ++failed;
        }
        json body = {{"modes", sol.diagnostics.size()}, {"all_solved", sol.all_solved()}, {"diagnostics", diags}};
        if (distinct_weights(sol.u) >= 6) {
            DecayProfile prof = decay_classify(sol.u);
            body["u_decay"] = to_json(prof);
            w.text_file("decay_u.csv", [&](std::ostream& o) {
                o << "# job=" << w.job_line << "\n";
                write_decay_csv(o, prof);
            });
        }
        w.json_file("solution.json", body, jr);
        w.text_file("u_field.csv", [&](std::ostream& o) { write_field_csv(o, sol.u, w.meta()); });
        result.message = std::to_string(sol.diagnostics.size()) + " modes, " + std::to_string(failed) + " failed";
        if (failed) result.exit_code = 1;
        return;
    }
    if (job.command == "counterexample" || job.command == "verify") {
        CounterexampleReport rep = build_counterexample(job, log);
        if (job.command == "counterexample") {
            w.json_file("counterexample.json", to_json(rep), jr);
            w.text_file("f_field.csv", [&](std::ostream& o) { write_field_csv(o, rep.f_field, w.meta()); });
            w.text_file("u_field.csv", [&](std::ostream& o) { write_field_csv(o, rep.u_field, w.meta()); });
            w.text_file("summary.csv", [&](std::ostream& o) {
                o << "# job=" << w.job_line << "\n";
                write_summary_csv(o, rep);
            });
            result.message = to_string(rep.recipe) + (rep.all_passed() ? ": all checks passed" : ": checks failed");
            if (!rep.all_passed()) result.exit_code = 1;
        } else {
            CounterexampleOptions vo;
            vo.grid_size = job.grid_size;
            vo.residual_tol = job.residual_tol;
            VerifySummary vs = verify_report(rep, vo);
            json body = to_json(vs);
            body["recipe"] = to_string(rep.recipe);
            w.json_file("verify.json", body, jr);
            result.message = vs.passed ? "verified" : "verification failed";
            if (!vs.passed) result.exit_code = 1;
        }
        if (log)
            for (const auto& c : rep.checks)
                *log << (c.passed ? "pass " : "FAIL ") << c.name << " value=" << c.value << " bound=" << c.bound << "\n";
        return;
    }
    // probe
    json body;
    if (!job.probe_x.is_null()) {
        RealInput x = job.probe_x.is_string() ? RealInput(parse_big_rational(job.probe_x.get<std::string>()))
                                              : RealInput(job.probe_x.get<double>());
        body["liouville"] = to_json(liouville_probe(x, job.probe_depth));
    }
    if (job.model) {
        ArithmeticInput in = arithmetic_input(job.c, job.q, job.q_exact);
        body["gap_consistency"] = to_json(lemma36_consistency(*job.model, in, job.max_label, job.probe_M, job.scan_K));
    }
    if (body.is_null()) throw DomainError("probe needs probe.x or a model with c and q");
    w.json_file("probe.json", body, jr);
    result.message = "probe written";
}

}  // namespace

RunResult run_job(const JobSpec& job, const std::string& out_dir, int threads, std::ostream* log) {
    RunResult result;
    try {
        std::filesystem::create_directories(out_dir);
        Writer w{out_dir, job.resolved.dump(), &result};
        run_body(job, w, threads, log, result);
    } catch (const Error& e) {
        result.exit_code = 1;
        result.message = e.what();
    } catch (const std::filesystem::filesystem_error& e) {
        result.exit_code = 1;
        result.message = e.what();
    }
    return result;
}

}  // namespace hypo
