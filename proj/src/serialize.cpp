#include "hypo/serialize.hpp"

#include <cmath>

namespace hypo {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json to_json(const SignCertificate& c) {
    json w = json::array();
    for (const auto& x : c.witnesses) w.push_back({{"t", x.t}, {"value", x.value}});
    return {{"verdict", to_string(c.verdict)},
            {"rigor", to_string(c.rigor)},
            {"witnesses", w},
            {"zero_tolerance", c.zero_tolerance},
            {"cells_checked", c.cells_checked},
            {"zero_cells", c.zero_cells},
            {"max_depth", c.max_depth}};
}

namespace {

json bound_witness(const BoundWitness& w) {
    return {{"k", w.k}, {"rep", w.rep_label}, {"r", w.r}, {"gap", w.gap}, {"bound", w.bound}};
}

}  // namespace

json to_json(const DiophantineReport& r) {
    json wit = json::array();
    for (const auto& w : r.witnesses) {
        json j = {{"k", w.k}, {"rep", w.rep_label}, {"r", w.r}, {"mu", w.mu}};
        if (w.mu_exact) j["mu_exact"] = to_string(*w.mu_exact);
        wit.push_back(j);
    }
    json out = {{"resonant_set_verdict", to_string(r.verdict)},
                {"resonant_witnesses", wit},
                {"rigor", to_string(r.rigor)},
                {"max_label", r.max_label},
                {"unknown_beyond_table", r.unknown_beyond_table}};
    if (!r.family.empty()) out["family"] = r.family;
    if (r.has_bound) {
        json b = {{"C", r.C_best}, {"M", r.M}, {"scan_K", r.scan_K}, {"rigor", to_string(r.bound_rigor)}};
        if (r.C_best_exact) b["C_exact"] = to_string(*r.C_best_exact);
        if (r.gap_infimum) b["gap_infimum"] = *r.gap_infimum;
        if (r.argmin) b["argmin"] = bound_witness(*r.argmin);
        json v = json::array();
        for (const auto& w : r.violation_witnesses) v.push_back(bound_witness(w));
        out["bound_constants"] = b;
        out["violation_witnesses"] = v;
    }
    return out;
}

json to_json(const ArithmeticInput& in) {
    json out = {{"c0", complex_json(in.c0)}, {"q", complex_json(in.q)}, {"exact", in.exact()}};
    if (in.exact()) {
        out["c0_exact"] = to_string(*in.c0_exact);
        out["q_exact"] = to_string(*in.q_exact);
    }
    return out;
}

json to_json(const ReducedTest& t) {
    json out = {{"decision", to_string(t.decision)},
                {"rigor", to_string(t.rigor)},
                {"reason", t.reason},
                {"report", to_json(t.report)}};
    if (t.C) out["C"] = *t.C;
    if (t.M) out["M"] = *t.M;
    return out;
}

json to_json(const Verdict& v) {
    json out = {{"decision", to_string(v.decision)},
                {"rigor", to_string(v.rigor)},
                {"model", v.model},
                {"arithmetic", to_json(v.arithmetic)},
                {"certificate",
                 {{"path", to_string(v.path)}, {"sign", to_json(v.sign)}, {"L0", to_json(v.L0)}}},
                {"scan_box", {{"max_label", v.max_label}, {"scan_K", v.scan_K}}},
                {"counterexample_hint", v.counterexample_hint ? json(*v.counterexample_hint) : json(nullptr)},
                {"notes", v.notes}};
    return out;
}

json to_json(const Lemma36Report& r) {
    auto pairs = [](const std::vector<std::pair<double, double>>& v) {
        json a = json::array();
        for (auto [w, g] : v) a.push_back({w, g});
        return a;
    };
    return {{"C_bound", r.C_bound},
            {"M_bound", r.M_bound},
            {"C_exp", r.C_exp},
            {"M_exp", r.M_exp},
            {"C_given", r.C_given},
            {"C_exp_given", r.C_exp_given},
            {"zeros_match", r.zeros_match},
            {"zero_count", r.zero_count},
            {"consistent", r.consistent},
            {"bound_records", pairs(r.bound_records)},
            {"exp_records", pairs(r.exp_records)}};
}

json to_json(const LiouvilleReport& r) {
    json conv = json::array();
    for (const auto& [p, q] : r.convergents) conv.push_back({p, q});
    return {{"classification", to_string(r.classification)},
            {"exponent", r.exponent},
            {"partial_quotients", r.partial_quotients},
            {"convergents", conv},
            {"exponents", r.exponents},
            {"depth_used", r.depth_used},
            {"precision_limited", r.precision_limited}};
}


namespace {

// JSON has no infinities; a zero tail's slope is written as a string.
json finite_or_text(double x) {
    if (std::isfinite(x)) return x;
    return x < 0 ? "-inf" : (x > 0 ? "inf" : "nan");
}

}  // namespace

json to_json(const DecayProfile& p) {
    json slopes = json::array();
    for (double s : p.slopes) slopes.push_back(finite_or_text(s));
    json out = {{"classification", to_string(p.classification)},
                {"slopes", slopes},
                {"tail_start", p.tail_start},
                {"thresholds", {{"slope_rapid", p.options.slope_rapid}, {"B_max", p.options.B_max},
                                {"min_weights", p.options.min_weights}}}};
    if (p.classification == DecayClass::PolynomialBound) out["K"] = p.K;
    if (p.classification == DecayClass::NoTemperedBound) out["stretch_rate"] = p.stretch_rate;
    return out;
}

json to_json(const CheckResult& c) {
    return {{"name", c.name}, {"passed", c.passed}, {"value", finite_or_text(c.value)},
            {"bound", finite_or_text(c.bound)}, {"detail", c.detail}};
}

json to_json(const CounterexampleReport& r) {
    json recs = json::array();
    for (const auto& x : r.records) {
        json j = {{"rep", x.rep.label}, {"r", x.r}, {"mu", x.mu}, {"weight", x.rep.weight},
                  {"lambda", complex_json(x.lambda)}, {"sup_f", x.sup_f}, {"sup_u", x.sup_u},
                  {"peak", x.peak}, {"bound", x.bound}, {"residual", x.residual},
                  {"residual_scale", x.residual_scale}};
        if (r.recipe == Recipe::HomogeneousResonant) {
            j["m"] = x.m;
            j["t_k"] = x.t_k;
        }
        if (r.recipe == Recipe::SmallGap) {
            j["j"] = x.j;
            j["gap"] = x.gap;
            j["t_k"] = x.t_k;
        }
        recs.push_back(j);
    }
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    json out = {{"recipe", to_string(r.recipe)}, {"model", r.model}, {"records", recs},
                {"checks", checks}, {"all_passed", r.all_passed()}};
    if (r.recipe == Recipe::SignChangeB0Pos || r.recipe == Recipe::SignChangeB0Neg)
        out["window"] = {{"B", r.B}, {"t0", r.t0}, {"tau0", r.tau0}, {"delta", r.delta},
                         {"K", r.K}, {"trig_branch", r.trig_branch}, {"trig_sign", r.trig_sign},
                         {"lower_exponent", r.lower_exponent}, {"lower_C", r.lower_C}};
    if (r.recipe == Recipe::SmallGap)
        out["cutoff"] = {{"t_limit", r.t_limit}, {"center", r.bump_center},
                         {"halfwidth", r.bump_halfwidth}, {"phi_l1", r.phi_l1}};
    return out;
}

json to_json(const VerifySummary& v) {
    json checks = json::array();
    for (const auto& c : v.checks) checks.push_back(to_json(c));
    json out = {{"passed", v.passed}, {"checks", checks}};
    if (v.f_decay) out["f_decay"] = to_json(*v.f_decay);
    if (v.u_decay) out["u_decay"] = to_json(*v.u_decay);
    return out;
}

json to_json(const ModeDiagnostic& d) {
    json w = json::array();
    for (const auto& x : d.warnings) w.push_back({{"kind", to_string(x.kind)}, {"value", x.value}, {"message", x.message}});
    json out = {{"rep", d.key.label}, {"r", d.key.r}, {"s", d.key.s}, {"status", to_string(d.status)},
                {"branch", to_string(d.branch)}, {"residual", d.residual}, {"conditioning", d.conditioning},
                {"warnings", w}};
    if (!d.message.empty()) out["message"] = d.message;
    if (d.status == ModeStatus::Obstructed) out["obstruction"] = complex_json(d.obstruction);
    return out;
}

}  // namespace hypo
