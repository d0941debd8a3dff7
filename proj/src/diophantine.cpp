#include "hypo/diophantine.hpp"

#include "hypo/complex_math.hpp"
#include "hypo/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

namespace hypo {

std::string to_string(ResonantVerdict v) {
    switch (v) {
        case ResonantVerdict::Empty: return "Empty";
        case ResonantVerdict::FiniteListed: return "FiniteListed";
        case ResonantVerdict::InfiniteFamily: return "InfiniteFamily";
        case ResonantVerdict::UnknownHeuristic: return "UnknownHeuristic";
    }
    return "?";
}

std::string to_string(LiouvilleClass c) {
    switch (c) {
        case LiouvilleClass::RationalDetected: return "RationalDetected";
        case LiouvilleClass::NonLiouvilleEvidence: return "NonLiouvilleEvidence";
        case LiouvilleClass::LiouvilleSuspect: return "LiouvilleSuspect";
        case LiouvilleClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

ArithmeticInput ArithmeticInput::exact_input(const GaussianRational& c0, const GaussianRational& q) {
    ArithmeticInput in;
    in.c0 = c0.to_complex();
    in.q = q.to_complex();
    in.c0_exact = c0;
    in.q_exact = q;
    return in;
}

ArithmeticInput ArithmeticInput::float_input(Complex c0, Complex q) {
    if (!std::isfinite(c0.real()) || !std::isfinite(c0.imag()) || !std::isfinite(q.real()) ||
        !std::isfinite(q.imag()))
        throw DomainError("c0 and q must be finite");
    ArithmeticInput in;
    in.c0 = c0;
    in.q = q;
    return in;
}

namespace {

const Rational kZero(0);
const Rational kOne(1);

// z = c0 mu - i q; with c0 = a + i b and q = g + i d this is
// (a mu + d) + i (b mu - g).
struct ExactZ {
    Rational re, im;
};

ExactZ exact_z(const ArithmeticInput& in, const Rational& mu) {
    const GaussianRational& c0 = *in.c0_exact;
    const GaussianRational& q = *in.q_exact;
    return {c0.re * mu + q.im, c0.im * mu - q.re};
}

Complex float_z(const ArithmeticInput& in, double mu) { return in.c0 * mu - Complex(0.0, 1.0) * in.q; }

// Distance to the nearest integer.
Rational int_dist(const Rational& x) {
    Rational fr = x - floor_rational(x);
    return std::min(fr, kOne - fr);
}

// Lattice of mu values: Z on the circle, Z/2 on SU(2).
Rational mu_unit(const SpectralModel& model) {
    return model.kind() == ModelKind::SU2 ? Rational(1, 2) : kOne;
}

bool on_lattice(const Rational& mu, const Rational& unit) { return is_integer(mu / unit); }

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::optional<Rational> exact_sqrt(const Rational& x) {
    std::int64_t a = isqrt(x.numerator()), b = isqrt(x.denominator());
    if (a < 0 || a * a != x.numerator() || b * b != x.denominator()) return std::nullopt;
    return Rational(a, b);
}

constexpr std::int64_t kPeriodCap = 1000000;

std::string describe_mu(const SpectralModel& model, const Rational& mu) {
    std::ostringstream os;
    if (model.kind() == ModelKind::SU2)
        os << "mu = " << to_string(mu) << " in every rep with label L >= " << to_string(Rational(2) * (mu < kZero ? -mu : mu))
           << " and L = 2 mu mod 2";
    else
        os << "mu = " << to_string(mu) << " (label " << to_string(mu) << ")";
    return os.str();
}

}  // namespace

DiophantineReport resonant_set(const SpectralModel& model, const ArithmeticInput& input, int max_label,
                               const ScanOptions& options) {
    if (max_label < 0) throw DomainError("max_label must be non-negative");
    DiophantineReport rep;
    rep.max_label = max_label;
    const auto reps = enumerate_reps(model, max_label);
    const bool custom = model.kind() == ModelKind::CustomTable;
    rep.unknown_beyond_table = custom;

    if (!input.exact()) {
        rep.rigor = Rigor::Heuristic;
        bool near_edge = false;
        for (const auto& p : reps)
            for (int r = 1; r <= p.dim; ++r) {
                Complex z = float_z(input, p.mu_value(r));
                auto k = static_cast<std::int64_t>(-std::llround(z.real()));
                if (std::abs(Complex(static_cast<double>(k), 0.0) + z) <= options.res_tol) {
                    rep.witnesses.push_back({k, p.label, r, p.mu_value(r), std::nullopt});
                    if (std::abs(p.label) > 0.9 * max_label) near_edge = true;
                }
            }
        if (rep.witnesses.empty())
            rep.verdict = ResonantVerdict::Empty;
        else
            rep.verdict = (near_edge && !custom) ? ResonantVerdict::UnknownHeuristic : ResonantVerdict::FiniteListed;
        return rep;
    }

    for (const auto& p : reps)
        for (int r = 1; r <= p.dim; ++r) {
            const Rational& mu = p.mu[static_cast<std::size_t>(r - 1)];
            ExactZ z = exact_z(input, mu);
            if (z.im == kZero && is_integer(z.re))
                rep.witnesses.push_back({-z.re.numerator(), p.label, r, to_double(mu), mu});
        }

    if (custom) {
        rep.verdict = rep.witnesses.empty() ? ResonantVerdict::Empty : ResonantVerdict::FiniteListed;
        return rep;
    }

    const GaussianRational& c0 = *input.c0_exact;
    const GaussianRational& q = *input.q_exact;
    const Rational unit = mu_unit(model);
    const Rational alpha = c0.re, beta = c0.im, gamma = q.re, delta = q.im;

    if (beta != kZero) {
        // Imaginary part vanishes for exactly one mu.
        Rational mu = gamma / beta;
        ExactZ z = exact_z(input, mu);
        if (!on_lattice(mu, unit) || !is_integer(z.re)) {
            rep.verdict = ResonantVerdict::Empty;
        } else if (model.kind() == ModelKind::Torus1) {
            rep.verdict = ResonantVerdict::FiniteListed;
            if (rep.witnesses.empty())
                rep.witnesses.push_back({-z.re.numerator(), static_cast<int>(mu.numerator()), 1, to_double(mu), mu});
        } else {
            rep.verdict = ResonantVerdict::InfiniteFamily;
            rep.family = describe_mu(model, mu) + ", k = " + to_string(-z.re);
        }
        return rep;
    }
    if (gamma != kZero) {
        rep.verdict = ResonantVerdict::Empty;
        return rep;
    }

    // beta = gamma = 0: need alpha*unit*m + delta in Z for some integer m;
    // the solution set is periodic in m.
    const Rational A = alpha * unit;
    const std::int64_t period = A.denominator() * delta.denominator();
    if (period > kPeriodCap) {
        rep.rigor = Rigor::Heuristic;
        rep.verdict = rep.witnesses.empty() ? ResonantVerdict::Empty : ResonantVerdict::UnknownHeuristic;
        return rep;
    }
    std::vector<std::int64_t> residues;
    for (std::int64_t m = 0; m < period; ++m)
        if (is_integer(A * Rational(m) + delta)) residues.push_back(m);
    if (residues.empty()) {
        rep.verdict = ResonantVerdict::Empty;
        return rep;
    }
    rep.verdict = ResonantVerdict::InfiniteFamily;
    std::ostringstream os;
    os << "mu = " << to_string(unit) << " * m with m mod " << period << " in {";
    for (std::size_t i = 0; i < residues.size() && i < 16; ++i) os << (i ? ", " : "") << residues[i];
    if (residues.size() > 16) os << ", ...";
    os << "}, k = -(c0 mu - i q)";
    rep.family = os.str();
    return rep;
}

namespace {

// Exact infimum of the squared nonzero gaps |k + c0 mu - i q|^2 over all k
// and all mu in the model's lattice. `g_box` is any attained nonzero gap.
std::optional<Rational> exact_gap_infimum(const SpectralModel& model, const ArithmeticInput& in, double g_box) {
    const GaussianRational& c0 = *in.c0_exact;
    const GaussianRational& q = *in.q_exact;
    const Rational unit = mu_unit(model);
    const Rational beta = c0.im, gamma = q.re;

    std::optional<Rational> best;
    auto consider = [&](const Rational& mu) {
        ExactZ z = exact_z(in, mu);
        Rational d = int_dist(z.re);
        Rational n2 = (z.im == kZero && d == kZero) ? kOne : d * d + z.im * z.im;
        if (!best || n2 < *best) best = n2;
    };

    if (beta != kZero) {
        // Only mu with |beta mu - gamma| <= g_box can beat g_box.
        double center = to_double(gamma / beta) / to_double(unit);
        double half = g_box / std::abs(to_double(beta)) / to_double(unit) + 1.0;
        if (half > static_cast<double>(kPeriodCap)) return std::nullopt;
        auto lo = static_cast<std::int64_t>(std::floor(center - half));
        auto hi = static_cast<std::int64_t>(std::ceil(center + half));
        for (std::int64_t m = lo; m <= hi; ++m) consider(unit * Rational(m));
        return best;
    }
    const Rational A = c0.re * unit;
    const std::int64_t period = A.denominator() * q.im.denominator();
    if (period > kPeriodCap) return std::nullopt;
    for (std::int64_t m = 0; m < period; ++m) consider(unit * Rational(m));
    return best;
}

double next_weight(const SpectralModel& model, int max_label) {
    return model.rep(max_label + 1).weight;
}

}  // namespace

DiophantineReport lower_bound_scan(const SpectralModel& model, const ArithmeticInput& input, double M, int scan_K,
                                   int max_label, const ScanOptions& options) {
    if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("M must be a finite non-negative number");
    if (scan_K < 0) throw DomainError("scan_K must be non-negative");
    DiophantineReport rep = resonant_set(model, input, max_label, options);
    rep.has_bound = true;
    rep.M = M;
    rep.scan_K = scan_K;

    const bool exact = input.exact();
    double best = std::numeric_limits<double>::infinity();
    double min_gap = std::numeric_limits<double>::infinity();
    std::optional<Rational> best_n2;  // exact squared gap of the argmin (M = 0)
    BoundWitness arg;
    auto& worst = rep.violation_witnesses;
    auto worse = [](const BoundWitness& a, const BoundWitness& b) {
        return std::tie(a.bound, a.k, a.rep_label, a.r) < std::tie(b.bound, b.k, b.rep_label, b.r);
    };
    auto keep = [&](const BoundWitness& w) {
        if (worst.size() == kWorstWitnesses && !worse(w, worst.back())) return;
        worst.insert(std::upper_bound(worst.begin(), worst.end(), w, worse), w);
        if (worst.size() > kWorstWitnesses) worst.pop_back();
    };

    const auto reps = enumerate_reps(model, max_label);
    const auto K = static_cast<std::int64_t>(scan_K);
    for (const auto& p : reps)
        for (int r = 1; r <= p.dim; ++r) {
            const double mu = p.mu_value(r);
            Complex z = float_z(input, mu);
            const double x = z.real(), y = z.imag();
            std::optional<ExactZ> ez;
            if (exact) ez = exact_z(input, p.mu[static_cast<std::size_t>(r - 1)]);

            // Away from |k + x| <= |y| + 1 both factors grow with |k|, so the box
            // ends, 0 and the band around -x cover every minimiser.
            std::vector<std::int64_t> ks = {-K, K, 0};
            double span = std::abs(y) + 1.0;
            auto lo = static_cast<std::int64_t>(std::max<double>(-K, std::floor(-x - span)));
            auto hi = static_cast<std::int64_t>(std::min<double>(K, std::ceil(-x + span)));
            for (std::int64_t k = lo; k <= hi; ++k) ks.push_back(k);
            std::sort(ks.begin(), ks.end());
            ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

            for (std::int64_t k : ks) {
                if (k < -K || k > K) continue;
                bool zero;
                if (ez)
                    zero = ez->im == kZero && ez->re + Rational(k) == kZero;
                else
                    zero = std::hypot(static_cast<double>(k) + x, y) <= options.res_tol;
                if (zero) continue;
                double gap = std::hypot(static_cast<double>(k) + x, y);
                double bound = gap * std::pow(static_cast<double>(std::llabs(k)) + p.weight, M);
                min_gap = std::min(min_gap, gap);
                keep({k, p.label, r, gap, bound});
                if (exact && M == 0.0 && bound <= best * (1.0 + 1e-9)) {
                    Rational re = ez->re + Rational(k);
                    Rational n2 = re * re + ez->im * ez->im;
                    if (!best_n2 || n2 < *best_n2) {
                        best_n2 = n2;
                        best = bound;
                        arg = {k, p.label, r, gap, bound};
                    }
                    continue;
                }
                if (bound < best) {
                    best = bound;
                    arg = {k, p.label, r, gap, bound};
                }
            }
        }

    if (!std::isfinite(best)) {
        rep.C_best = 0.0;
        rep.bound_rigor = Rigor::Heuristic;
        return rep;
    }
    rep.C_best = best;
    rep.argmin = arg;
    if (best_n2) {
        rep.C_best_exact = exact_sqrt(*best_n2);
        if (rep.C_best_exact) rep.C_best = to_double(*rep.C_best_exact);
    }

    rep.bound_rigor = Rigor::Heuristic;
    if (exact && model.kind() != ModelKind::CustomTable) {
        auto g2 = exact_gap_infimum(model, input, min_gap);
        if (g2) {
            double g = std::sqrt(to_double(*g2));
            rep.gap_infimum = g;
            double outside = std::min(static_cast<double>(K) + 2.0, next_weight(model, max_label));
            rep.tail_bound = g * std::pow(outside, M);
            bool ok;
            if (M == 0.0 && best_n2)
                ok = *g2 >= *best_n2;  // the infimum is attained inside the box
            else
                ok = rep.tail_bound >= rep.C_best * (1.0 - 1e-12);
            if (ok) rep.bound_rigor = Rigor::Certified;
        }
    }
    return rep;
}

std::string format_report(const DiophantineReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "resonant_set: " << to_string(r.verdict) << " (rigor " << to_string(r.rigor) << ", max_label "
       << r.max_label << ")\n";
    if (!r.family.empty()) os << "family: " << r.family << "\n";
    if (r.unknown_beyond_table) os << "beyond table: unknown\n";
    for (const auto& w : r.witnesses) {
        os << "resonance k=" << w.k << " rep=" << w.rep_label << " r=" << w.r << " mu=";
        if (w.mu_exact)
            os << to_string(*w.mu_exact);
        else
            os << w.mu;
        os << "\n";
    }
    if (r.has_bound) {
        os << "bound: C_best=";
        if (r.C_best_exact)
            os << to_string(*r.C_best_exact);
        else
            os << r.C_best;
        os << " M=" << r.M << " scan_K=" << r.scan_K << " rigor " << to_string(r.bound_rigor) << "\n";
        if (r.argmin)
            os << "argmin k=" << r.argmin->k << " rep=" << r.argmin->rep_label << " r=" << r.argmin->r
               << " gap=" << r.argmin->gap << "\n";
        for (const auto& w : r.violation_witnesses)
            os << "near k=" << w.k << " rep=" << w.rep_label << " r=" << w.r << " gap=" << w.gap
               << " bound=" << w.bound << "\n";
    }
    return os.str();
}

ExpGap exp_gap(const ArithmeticInput& input, double mu, double exp_cap) {
    Complex z = float_z(input, mu);
    // Shifting Re z by an integer leaves both exponentials unchanged.
    const double xr = z.real() - std::nearbyint(z.real());
    const double y = z.imag();
    const Complex w(-kTwoPi * y, kTwoPi * xr);  // 2πi z, reduced
    ExpGap out;
    if (std::abs(w.real()) > exp_cap) {
        // One exponential is below e^{-cap}; the other is astronomically large.
        out.saturated = true;
        out.gap = std::abs(cexpm1(w.real() < 0 ? w : -w));
        return out;
    }
    out.gap = std::min(std::abs(cexpm1(w)), std::abs(cexpm1(-w)));
    return out;
}

namespace {

// Least-squares slope and intercept of log v against log w.
std::pair<double, double> loglog_fit(const std::vector<std::pair<double, double>>& pts) {
    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [w, v] : pts) {
        double lx = std::log(w), ly = std::log(v);
        n += 1;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double den = n * sxx - sx * sx;
    if (n < 2 || den <= 1e-12) return {0.0, n > 0 ? sy / n : 0.0};
    double slope = (n * sxy - sx * sy) / den;
    return {slope, (sy - slope * sx) / n};
}

std::vector<std::pair<double, double>> record_lows(const std::vector<std::pair<double, double>>& pts) {
    std::vector<std::pair<double, double>> out;
    double low = std::numeric_limits<double>::infinity();
    for (auto pt : pts)
        if (pt.second < low) {
            low = pt.second;
            out.push_back(pt);
        }
    return out;
}

}  // namespace

Lemma36Report lemma36_consistency(const SpectralModel& model, const ArithmeticInput& input, int max_label, double M,
                                  int scan_K) {
    if (!(M >= 0.0) || !std::isfinite(M)) throw DomainError("M must be a finite non-negative number");
    Lemma36Report out;
    std::vector<std::pair<double, double>> D, E;
    const double inf = std::numeric_limits<double>::infinity();
    out.C_given = inf;
    out.C_exp_given = inf;

    for (const auto& p : enumerate_reps(model, max_label)) {
        double d_min = inf, e_min = inf;
        for (int r = 1; r <= p.dim; ++r) {
            Complex z = float_z(input, p.mu_value(r));
            bool zero;
            if (input.exact()) {
                ExactZ ez = exact_z(input, p.mu[static_cast<std::size_t>(r - 1)]);
                zero = ez.im == kZero && is_integer(ez.re);
            } else {
                zero = std::abs(z - std::nearbyint(z.real())) <= 1e-9;
            }
            ExpGap eg = exp_gap(input, p.mu_value(r));
            bool exp_zero = eg.gap <= 1e-8;
            if (zero != exp_zero) out.zeros_match = false;
            if (zero) {
                ++out.zero_count;
                continue;
            }
            // Nearest admissible k; a finite scan_K clamps it.
            double k = -std::nearbyint(z.real());
            if (scan_K > 0) k = std::clamp(k, -static_cast<double>(scan_K), static_cast<double>(scan_K));
            d_min = std::min(d_min, std::hypot(k + z.real(), z.imag()));
            e_min = std::min(e_min, eg.gap);
        }
        if (d_min < inf) {
            D.emplace_back(p.weight, d_min);
            out.C_given = std::min(out.C_given, d_min * std::pow(p.weight, M));
        }
        if (e_min < inf) {
            E.emplace_back(p.weight, e_min);
            out.C_exp_given = std::min(out.C_exp_given, e_min * std::pow(p.weight, M));
        }
    }
    if (D.empty()) {
        out.C_given = out.C_exp_given = 0.0;
        out.consistent = out.zeros_match;
        return out;
    }

    out.bound_records = record_lows(D);
    out.exp_records = record_lows(E);
    // Decay is read off the records in the upper half of the log-weight
    // range; sequences bounded below have none there.
    const double log_mid = 0.5 * (std::log(D.front().first) + std::log(D.back().first));
    auto fit_side = [inf, log_mid](const std::vector<std::pair<double, double>>& recs, double& C, double& Mf) {
        std::vector<std::pair<double, double>> upper;
        for (auto pt : recs)
            if (std::log(pt.first) >= log_mid) upper.push_back(pt);
        Mf = upper.size() < 2 ? 0.0 : std::max(0.0, -loglog_fit(upper).first);
        C = inf;
        for (auto [w, v] : recs) C = std::min(C, v * std::pow(w, Mf));
    };
    fit_side(out.bound_records, out.C_bound, out.M_bound);
    fit_side(out.exp_records, out.C_exp, out.M_exp);
    out.consistent = out.zeros_match && (out.C_given > 0.0) == (out.C_exp_given > 0.0) &&
                     std::abs(out.M_bound - out.M_exp) <= 0.5;
    return out;
}

namespace {

using BigInt = boost::multiprecision::cpp_int;

double big_log(const BigInt& n) {
    if (n <= 0) return -std::numeric_limits<double>::infinity();
    unsigned msb = boost::multiprecision::msb(n);
    if (msb < 60) return std::log(n.convert_to<double>());
    unsigned shift = msb - 60;
    BigInt top = n >> shift;
    return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

double log_abs(const BigRational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    if (num < 0) num = -num;
    return big_log(num) - big_log(boost::multiprecision::denominator(r));
}

BigInt big_floor(const BigRational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt quo = num / den;  // truncates toward zero
    if (num < 0 && quo * den != num) quo -= 1;
    return quo;
}

}  // namespace

LiouvilleReport liouville_probe(const RealInput& input, int depth) {
    if (depth <= 0) throw DomainError("liouville_probe depth must be positive");
    const bool is_float = std::holds_alternative<double>(input);
    BigRational x;
    double scale = 1.0;
    if (is_float) {
        double v = std::get<double>(input);
        if (!std::isfinite(v)) throw DomainError("liouville_probe needs a finite number");
        x = BigRational(v);  // exact binary value
        scale = std::max(1.0, std::abs(v));
    } else {
        x = std::get<BigRational>(input);
    }
    // For a double the expansion is meaningless once |x - p/q| falls below
    // the representation error.
    const double float_floor = std::log(16.0 * std::numeric_limits<double>::epsilon() * scale);

    LiouvilleReport out;
    BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    BigRational rest = x;
    bool terminated = false;
    std::vector<BigInt> exponent_q;
    for (int n = 0; n < depth; ++n) {
        BigInt a = big_floor(rest);
        BigInt p = a * p_prev + p_prev2;
        BigInt qn = a * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = qn;
        BigRational err = x - BigRational(p, qn);
        if (is_float && err != 0 && log_abs(err) < float_floor) {
            out.precision_limited = true;
            break;
        }
        out.partial_quotients.push_back(a.str());
        out.convergents.emplace_back(p.str(), qn.str());
        ++out.depth_used;
        if (err == 0) {
            terminated = true;
            break;
        }
        if (qn >= 2) {
            out.exponents.push_back(-log_abs(err) / big_log(qn));
            exponent_q.push_back(qn);
        }
        rest = 1 / (rest - BigRational(a));
    }

    if (terminated) {
        out.classification = LiouvilleClass::RationalDetected;
        return out;
    }
    if (out.precision_limited) {
        // Matched to full precision by a small denominator: a rational as far
        // as the double can tell.
        if (q_prev2 <= 10000 || out.exponents.size() < 4) {
            out.classification = LiouvilleClass::RationalDetected;
            return out;
        }
    }
    if (out.exponents.size() < 4) {
        out.classification = LiouvilleClass::Inconclusive;
        return out;
    }
    // Small denominators say little about the limsup; use q_n >= 1000 when
    // there are enough of them, the tail half otherwise.
    std::vector<double> tail;
    for (std::size_t i = 0; i < out.exponents.size(); ++i)
        if (exponent_q[i] >= 1000) tail.push_back(out.exponents[i]);
    if (tail.size() < 3)
        tail.assign(out.exponents.begin() + static_cast<std::ptrdiff_t>(out.exponents.size() / 2), out.exponents.end());
    out.exponent = *std::max_element(tail.begin(), tail.end());
    out.classification = out.exponent > 3.0 ? LiouvilleClass::LiouvilleSuspect : LiouvilleClass::NonLiouvilleEvidence;
    return out;
}

BigRational parse_big_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    auto bad = [&text]() { return DomainError("malformed rational: '" + text + "'"); };
    if (s.empty()) throw bad();

    auto parse_int = [&](const std::string& t, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i >= t.size()) throw bad();
        for (std::size_t j = i; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw bad();
        BigInt v(t.substr(i));
        return (t[0] == '-') ? BigInt(-v) : v;
    };

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_int(s.substr(0, slash), true);
        BigInt den = parse_int(s.substr(slash + 1), false);
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
        return BigRational(num, den);
    }

    // Decimal with optional exponent.
    std::string mant = s, ex;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        mant = s.substr(0, e);
        ex = s.substr(e + 1);
        if (ex.empty()) throw bad();
    }
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto dot = mant.find('.');
    std::string ip = mant.substr(0, dot), fp = dot == std::string::npos ? "" : mant.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw bad();
    std::string digits = ip + fp;
    BigInt num = parse_int(digits, false);
    long long exp10 = -static_cast<long long>(fp.size());
    if (!ex.empty()) {
        BigInt ev = parse_int(ex, true);
        if (ev > 100000 || ev < -100000) throw DomainError("exponent out of range in '" + text + "'");
        exp10 += ev.convert_to<long long>();
    }
    BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exp10)));
    BigRational r = exp10 >= 0 ? BigRational(num * pow10) : BigRational(num, pow10);
    return neg ? BigRational(-r) : r;
}

}  // namespace hypo
