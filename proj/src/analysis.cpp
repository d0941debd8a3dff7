#include "hypo/analysis.hpp"

#include "hypo/errors.hpp"
#include "hypo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <tuple>

namespace hypo {

std::string to_string(DecayClass c) {
    switch (c) {
        case DecayClass::RapidDecay: return "RapidDecay";
        case DecayClass::PolynomialBound: return "PolynomialBound";
        case DecayClass::NoTemperedBound: return "NoTemperedBound";
    }
    return "?";
}

namespace {

constexpr double kLogFloor = 1e-300;

struct Fit {
    double slope = 0.0, intercept = 0.0, sse = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    Fit f;
    const double den = n * sxx - sx * sx;
    if (den <= 0) {
        f.intercept = sy / n;
    } else {
        f.slope = (n * sxy - sx * sy) / den;
        f.intercept = (sy - f.slope * sx) / n;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - f.slope * x[i] - f.intercept;
        f.sse += r * r;
    }
    return f;
}

double max_abs(const std::vector<Complex>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

bool same_weight(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

DecayProfile decay_classify(const CoefficientField& field, const DecayOptions& options) {
    if (options.B_max < 0) throw DomainError("B_max must be non-negative");
    DecayProfile prof;
    prof.options = options;

    // Per-rep sup norms of each derivative order.
    std::map<int, std::vector<double>> sup_by_label;
    std::map<int, double> weight_of;
    for (const auto& [key, e] : field.entries()) {
        auto& sups = sup_by_label[key.label];
        sups.resize(static_cast<std::size_t>(options.B_max) + 1, 0.0);
        weight_of[key.label] = e.rep.weight;
        for (int beta = 0; beta <= options.B_max; ++beta) {
            double s = beta == 0 ? max_abs(e.samples) : max_abs(spectral_derivative(e.samples, beta));
            sups[static_cast<std::size_t>(beta)] = std::max(sups[static_cast<std::size_t>(beta)], s);
        }
    }
    for (const auto& [label, sups] : sup_by_label)
        for (int beta = 0; beta <= options.B_max; ++beta)
            prof.records.push_back({weight_of[label], label, beta, sups[static_cast<std::size_t>(beta)]});
    std::sort(prof.records.begin(), prof.records.end(), [](const DecayRecord& a, const DecayRecord& b) {
        return std::tie(a.weight, a.beta, a.label) < std::tie(b.weight, b.beta, b.label);
    });

    // Distinct weights; reps sharing a weight contribute their maximum.
    std::vector<double> weights;
    std::vector<std::vector<double>> sup_w;  // [weight index][beta]
    for (const auto& rec : prof.records) {
        if (weights.empty() || !same_weight(weights.back(), rec.weight)) {
            weights.push_back(rec.weight);
            sup_w.emplace_back(static_cast<std::size_t>(options.B_max) + 1, 0.0);
        }
        auto& s = sup_w.back()[static_cast<std::size_t>(rec.beta)];
        s = std::max(s, rec.sup_norm);
    }
    const int n = static_cast<int>(weights.size());
    if (n < options.min_weights)
        throw InsufficientData("decay_classify needs at least " + std::to_string(options.min_weights) +
                               " distinct weights, got " + std::to_string(n));

    prof.tail_start = n / 2;
    std::vector<double> lx, sx;
    for (int i = prof.tail_start; i < n; ++i) {
        lx.push_back(std::log(weights[static_cast<std::size_t>(i)]));
        sx.push_back(std::sqrt(weights[static_cast<std::size_t>(i)]));
    }
    bool rapid = true;
    Fit log_fit0, sqrt_fit0;
    for (int beta = 0; beta <= options.B_max; ++beta) {
        std::vector<double> ly;
        bool all_zero = true;
        for (int i = prof.tail_start; i < n; ++i) {
            double s = sup_w[static_cast<std::size_t>(i)][static_cast<std::size_t>(beta)];
            all_zero = all_zero && s == 0.0;
            ly.push_back(std::log(std::max(s, kLogFloor)));
        }
        // An identically zero tail decays faster than any power.
        if (all_zero) {
            prof.slopes.push_back(-std::numeric_limits<double>::infinity());
            continue;
        }
        Fit f = least_squares(lx, ly);
        prof.slopes.push_back(f.slope);
        if (f.slope > -options.slope_rapid) rapid = false;
        if (beta == 0) {
            log_fit0 = f;
            sqrt_fit0 = least_squares(sx, ly);
        }
    }

    if (rapid) {
        prof.classification = DecayClass::RapidDecay;
        return prof;
    }
    // Growth like exp(alpha sqrt(w)) fits a line in sqrt(w) far better than
    // any power of w.
    const double growth = sqrt_fit0.slope * (sx.back() - sx.front());
    if (sqrt_fit0.slope > 0.0 && growth > 0.1 && sqrt_fit0.sse < 0.25 * log_fit0.sse) {
        prof.classification = DecayClass::NoTemperedBound;
        prof.stretch_rate = sqrt_fit0.slope;
        return prof;
    }
    prof.classification = DecayClass::PolynomialBound;
    prof.K = static_cast<int>(std::ceil(prof.slopes[0] - 0.05));
    return prof;
}

void write_decay_csv(std::ostream& out, const DecayProfile& prof) {
    out << "# classification=" << to_string(prof.classification) << "\n";
    out << "# slope_rapid=" << prof.options.slope_rapid << " B_max=" << prof.options.B_max << "\n";
    out << "weight,label,beta,sup_norm,log_weight,log_sup\n";
    char buf[256];
    for (const auto& r : prof.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%.17g,%.17g,%.17g\n", r.weight, r.label, r.beta, r.sup_norm,
                      std::log(r.weight), std::log(std::max(r.sup_norm, kLogFloor)));
        out << buf;
    }
}

std::vector<TestFunction> default_battery() {
    auto trig = [](int n, bool sine) {
        std::map<int, Complex> m;
        if (n == 0) {
            m[0] = 1.0;
        } else if (sine) {
            m[n] = Complex(0, -0.5);
            m[-n] = Complex(0, 0.5);
        } else {
            m[n] = 0.5;
            m[-n] = 0.5;
        }
        return PeriodicFn(TrigPoly(m));
    };
    std::vector<TestFunction> b;
    b.push_back({"1", trig(0, false)});
    b.push_back({"cos t", trig(1, false)});
    b.push_back({"sin t", trig(1, true)});
    b.push_back({"cos 2t", trig(2, false)});
    b.push_back({"sin 2t", trig(2, true)});
    b.push_back({"cos 5t", trig(5, false)});
    b.push_back({"exp(cos t)", PeriodicFn::exp_of(TrigPoly(std::map<int, Complex>{{1, 0.5}, {-1, 0.5}}))});
    b.push_back({"bump(pi, 1)", make_bump(kPi, 1.0, 0.5)});
    return b;
}

double seminorm_p1(const PeriodicFn& psi, int grid_size) {
    auto s = psi.sample(grid_size);
    return max_abs(s) + max_abs(spectral_derivative(s, 1));
}

PairingResult distribution_pairing(const CoefficientField& field, const std::vector<TestFunction>& battery) {
    if (battery.empty()) throw DomainError("distribution_pairing needs a nonempty battery");
    const int n = field.grid_size();
    std::vector<std::vector<Complex>> psis;
    std::vector<double> p1;
    for (const auto& tf : battery) {
        psis.push_back(tf.psi.sample(n));
        p1.push_back(seminorm_p1(tf.psi, n));
    }
    PairingResult out;
    std::map<double, double> by_weight;
    for (const auto& [key, e] : field.entries()) {
        double worst = 0.0;
        for (std::size_t b = 0; b < psis.size(); ++b) {
            Complex acc = 0.0;
            for (int j = 0; j < n; ++j) acc += e.samples[static_cast<std::size_t>(j)] * psis[b][static_cast<std::size_t>(j)];
            acc *= kTwoPi / n;
            worst = std::max(worst, std::abs(acc) / (p1[b] * e.rep.weight));
        }
        auto& slot = by_weight[e.rep.weight];
        slot = std::max(slot, worst);
        out.C = std::max(out.C, worst);
    }
    out.per_weight.assign(by_weight.begin(), by_weight.end());
    return out;
}

namespace {

Complex entry_value(const FieldEntry& e, double t) {
    if (e.fn) return (*e.fn)(t);
    return TrigInterpolant(e.samples)(t);
}

}  // namespace

double plancherel_norm(const CoefficientField& field, double t) {
    double acc = 0.0;
    for (const auto& [key, e] : field.entries()) acc += e.rep.dim * std::norm(entry_value(e, t));
    return std::sqrt(acc);
}

Complex synthesize_torus(const CoefficientField& field, double t, double x) {
    if (field.model_name() != "Torus1") throw Unsupported("pointwise synthesis is implemented for Torus1 only");
    Complex acc = 0.0;
    for (const auto& [key, e] : field.entries()) acc += entry_value(e, t) * std::polar(1.0, key.label * x);
    return acc;
}

CoefficientField analyze_torus(const std::function<Complex(double, double)>& F, int max_n, int grid_size,
                               int x_grid) {
    if (max_n < 0 || grid_size < 4 || x_grid <= 2 * max_n) throw DomainError("analyze_torus: grid too small");
    const SpectralModel torus = SpectralModel::torus();
    CoefficientField out("Torus1", grid_size);
    std::vector<std::vector<Complex>> vals(static_cast<std::size_t>(grid_size), std::vector<Complex>(static_cast<std::size_t>(x_grid)));
    for (int j = 0; j < grid_size; ++j)
        for (int m = 0; m < x_grid; ++m)
            vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = F(grid_point(j, grid_size), grid_point(m, x_grid));
    for (int nfreq = -max_n; nfreq <= max_n; ++nfreq) {
        std::vector<Complex> s(static_cast<std::size_t>(grid_size));
        for (int j = 0; j < grid_size; ++j) {
            Complex acc = 0.0;
            for (int m = 0; m < x_grid; ++m)
                acc += vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] * std::polar(1.0, -nfreq * grid_point(m, x_grid));
            s[static_cast<std::size_t>(j)] = acc / static_cast<double>(x_grid);
        }
        out.set_samples(torus.rep(nfreq), 1, 1, std::move(s));
    }
    return out;
}

}  // namespace hypo
