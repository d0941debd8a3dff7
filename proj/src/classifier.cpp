#include "hypo/classifier.hpp"

#include "hypo/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hypo {

std::string to_string(Decision d) {
    switch (d) {
        case Decision::GloballyHypoelliptic: return "GloballyHypoelliptic";
        case Decision::NotGloballyHypoelliptic: return "NotGloballyHypoelliptic";
        case Decision::Undecided: return "Undecided";
    }
    return "?";
}

std::string to_string(DecisionPath p) {
    switch (p) {
        case DecisionPath::ConstantCoefficient: return "constant_coefficient";
        case DecisionPath::ReducedOperator: return "reduced_operator";
        case DecisionPath::SignChange: return "sign_change";
        case DecisionPath::SignDefinite: return "sign_definite";
        case DecisionPath::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

std::optional<GaussianRational> dyadic(Complex z) {
    auto re = dyadic_rational(z.real());
    auto im = dyadic_rational(z.imag());
    if (!re || !im) return std::nullopt;
    return GaussianRational(*re, *im);
}

}  // namespace

ArithmeticInput arithmetic_input(const TrigPoly& c, Complex q, std::optional<GaussianRational> q_exact) {
    ArithmeticInput in = ArithmeticInput::float_input(c.mean(), q);
    std::optional<GaussianRational> c0 = c.exact_mean();
    if (!c0) c0 = dyadic(c.mean());
    if (!q_exact) q_exact = dyadic(q);
    if (c0 && q_exact) in = ArithmeticInput::exact_input(*c0, *q_exact);
    return in;
}

ReducedTest test_reduced(const SpectralModel& model, const ArithmeticInput& input, const ClassifyOptions& options) {
    if (options.max_label < 1 || options.scan_K < 2) throw DomainError("scan box too small");
    ReducedTest out;
    const DiophantineReport res = resonant_set(model, input, options.max_label);
    out.report = res;

    if (input.exact() && model.kind() != ModelKind::CustomTable) {
        if (res.verdict == ResonantVerdict::InfiniteFamily) {
            out.decision = Decision::NotGloballyHypoelliptic;
            out.rigor = Rigor::Certified;
            out.reason = "infinitely many resonant representations: " + res.family;
            return out;
        }
        DiophantineReport lb = lower_bound_scan(model, input, 0.0, options.scan_K, options.max_label);
        out.report = lb;
        if (lb.gap_infimum && *lb.gap_infimum > 0.0 && res.verdict != ResonantVerdict::UnknownHeuristic) {
            out.decision = Decision::GloballyHypoelliptic;
            out.rigor = Rigor::Certified;
            out.C = *lb.gap_infimum;
            out.M = 0.0;
            out.reason = "finitely many resonances and nonzero gaps bounded below by their exact infimum";
            return out;
        }
    }

    if (res.verdict == ResonantVerdict::UnknownHeuristic) {
        out.decision = Decision::Undecided;
        out.reason = "resonances reach the edge of the scanned labels";
        return out;
    }

    // Heuristic: the bound with some M on the grid must be stable when the
    // box is doubled.
    std::vector<double> grid = options.M_grid;
    std::sort(grid.begin(), grid.end());
    for (double M : grid) {
        DiophantineReport full = lower_bound_scan(model, input, M, options.scan_K, options.max_label);
        DiophantineReport half = lower_bound_scan(model, input, M, options.scan_K / 2, std::max(1, options.max_label / 2));
        out.report = full;
        if (full.C_best > 0.0 && full.C_best >= options.stability * half.C_best) {
            out.decision = Decision::GloballyHypoelliptic;
            out.rigor = weakest(res.rigor, full.bound_rigor);
            out.C = full.C_best;
            out.M = M;
            out.reason = "gap bound stable under doubling of the scan box";
            return out;
        }
    }
    out.decision = Decision::Undecided;
    out.reason = "no M on the grid gives a gap bound stable under doubling of the scan box";
    return out;
}

namespace {

Verdict classify_impl(const SpectralModel& model, const TrigPoly& c, const ArithmeticInput& in,
                      const ClassifyOptions& options) {
    Verdict v;
    v.arithmetic = in;
    v.model = model.name();
    v.max_label = options.max_label;
    v.scan_K = options.scan_K;

    // Only a0 of Re c survives the gauge transform.
    const TrigPoly b = c.imag_part();
    const double b0 = b.coeff(0).real();
    const SignCertificate variation = sign_certificate(b - TrigPoly::constant(b0), options.sign_grid);
    v.L0 = test_reduced(model, in, options);
    const ReducedTest& L0 = v.L0;
    const bool infinite = L0.report.verdict == ResonantVerdict::InfiniteFamily;

    if (variation.verdict == SignVerdict::IdenticallyZero) {
        v.sign = sign_certificate(b, options.sign_grid);
        v.path = DecisionPath::ConstantCoefficient;
        v.decision = L0.decision;
        v.rigor = weakest(L0.rigor, variation.rigor);
        if (v.decision == Decision::Undecided) v.path = DecisionPath::Inconclusive;
        if (v.decision == Decision::NotGloballyHypoelliptic && infinite) v.counterexample_hint = "homogeneous_resonant";
        return v;
    }

    v.sign = sign_certificate(b, options.sign_grid);
    if (v.sign.changes_sign()) {
        // Not hypoelliptic whichever way L0 goes: a non-hypoelliptic L0
        // already rules L out.
        v.decision = Decision::NotGloballyHypoelliptic;
        v.rigor = v.sign.rigor;
        if (L0.decision == Decision::NotGloballyHypoelliptic) {
            v.path = DecisionPath::ReducedOperator;
            if (infinite) v.counterexample_hint = "homogeneous_resonant";
        } else {
            v.path = DecisionPath::SignChange;
            v.counterexample_hint = b0 >= 0.0 ? "sign_change_b0pos" : "sign_change_b0neg";
        }
        if (L0.decision == Decision::Undecided)
            v.notes.push_back("reduced operator undecided; a sign change excludes hypoellipticity in either case");
        if (!v.counterexample_hint) v.counterexample_hint = b0 >= 0.0 ? "sign_change_b0pos" : "sign_change_b0neg";
        return v;
    }

    switch (L0.decision) {
        case Decision::GloballyHypoelliptic:
            v.decision = Decision::GloballyHypoelliptic;
            v.path = DecisionPath::SignDefinite;
            v.rigor = weakest(v.sign.rigor, L0.rigor);
            break;
        case Decision::NotGloballyHypoelliptic:
            v.decision = Decision::NotGloballyHypoelliptic;
            v.path = DecisionPath::ReducedOperator;
            v.rigor = L0.rigor;
            v.counterexample_hint = infinite ? "homogeneous_resonant" : "small_gap";
            break;
        case Decision::Undecided:
            v.decision = Decision::Undecided;
            v.path = DecisionPath::Inconclusive;
            v.rigor = Rigor::Heuristic;
            break;
    }
    return v;
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string cnum(Complex z) { return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i"; }

}  // namespace

Verdict classify(const SpectralModel& model, const TrigPoly& c, Complex q, const ClassifyOptions& options) {
    return classify_impl(model, c, arithmetic_input(c, q, std::nullopt), options);
}

Verdict classify(const SpectralModel& model, const TrigPoly& c, const GaussianRational& q,
                 const ClassifyOptions& options) {
    return classify_impl(model, c, arithmetic_input(c, q.to_complex(), q), options);
}

std::string explain(const Verdict& v) {
    std::ostringstream os;
    os << "decision: " << to_string(v.decision) << "\n";
    os << "rigor: " << to_string(v.rigor) << "\n";
    os << "path: " << to_string(v.path) << "\n";
    os << "model: " << v.model << "\n";
    const ArithmeticInput& in = v.arithmetic;
    if (in.exact())
        os << "c0: " << to_string(*in.c0_exact) << " (exact)\nq: " << to_string(*in.q_exact) << " (exact)\n";
    else
        os << "c0: " << cnum(in.c0) << " (float)\nq: " << cnum(in.q) << " (float)\n";

    os << "sign of Im c: " << to_string(v.sign.verdict) << " (" << to_string(v.sign.rigor) << ", "
       << v.sign.cells_checked << " cells)\n";
    if (v.sign.changes_sign() && v.sign.witnesses.size() >= 2)
        os << "  positive at t=" << num(v.sign.witnesses[0].t) << " value " << num(v.sign.witnesses[0].value)
           << "; negative at t=" << num(v.sign.witnesses[1].t) << " value " << num(v.sign.witnesses[1].value) << "\n";

    const DiophantineReport& r = v.L0.report;
    os << "reduced operator: " << to_string(v.L0.decision) << " (" << to_string(v.L0.rigor) << ")\n";
    os << "  " << v.L0.reason << "\n";
    os << "  resonant set: " << to_string(r.verdict);
    if (!r.family.empty()) os << "; " << r.family;
    os << "\n";
    for (std::size_t i = 0; i < r.witnesses.size() && i < 3; ++i) {
        const auto& w = r.witnesses[i];
        os << "  resonance k=" << w.k << " rep=" << w.rep_label << " r=" << w.r << "\n";
    }
    if (r.witnesses.size() > 3) os << "  ... " << r.witnesses.size() - 3 << " more\n";
    if (v.L0.C) os << "  bound constants: C=" << num(*v.L0.C) << " M=" << num(*v.L0.M) << "\n";
    if (v.decision == Decision::Undecided)
        os << "  scan box: |k| <= " << v.scan_K << ", labels <= " << v.max_label << "\n";
    if (v.counterexample_hint) os << "counterexample: " << *v.counterexample_hint << "\n";
    for (const auto& n : v.notes) os << "note: " << n << "\n";
    return os.str();
}

}  // namespace hypo
