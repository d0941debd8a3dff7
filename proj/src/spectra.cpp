#include "hypo/spectra.hpp"

#include "hypo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace hypo {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::Torus1: return "Torus1";
        case ModelKind::SU2: return "SU2";
        case ModelKind::CustomTable: return "CustomTable";
    }
    return "?";
}

namespace {

double weight_of(const Rational& nu) { return std::sqrt(1.0 + to_double(nu)); }

// min over n = 1..10^6 of n / (1 + n^2)^{1/4}.
double torus_growth_scan() {
    static const double value = [] {
        double best = std::numeric_limits<double>::infinity();
        for (int n = 1; n <= 1000000; ++n) {
            double w = std::sqrt(1.0 + double(n) * n);
            best = std::min(best, n / std::sqrt(w));
        }
        return best;
    }();
    return value;
}

// min over integer spin l = 1..10^6 of l / (1 + l(l+1))^{1/4}.
double su2_growth_scan() {
    static const double value = [] {
        double best = std::numeric_limits<double>::infinity();
        for (int l = 1; l <= 1000000; ++l) {
            double w = std::sqrt(1.0 + double(l) * (l + 1.0));
            best = std::min(best, l / std::sqrt(w));
        }
        return best;
    }();
    return value;
}

RepPoint torus_rep(int n) {
    RepPoint p;
    p.label = n;
    p.dim = 1;
    p.nu = Rational(std::int64_t(n) * n);
    p.weight = weight_of(p.nu);
    p.mu = {Rational(n)};
    return p;
}

RepPoint su2_rep(int doubled_spin) {
    RepPoint p;
    p.label = doubled_spin;
    p.dim = doubled_spin + 1;
    // l(l+1) with l = L/2
    p.nu = Rational(std::int64_t(doubled_spin) * (doubled_spin + 2), 4);
    p.weight = weight_of(p.nu);
    p.mu.reserve(static_cast<std::size_t>(p.dim));
    for (int j = 0; j < p.dim; ++j) p.mu.emplace_back(-doubled_spin + 2 * j, 2);
    return p;
}

RepPoint custom_rep(const CustomRow& row) {
    RepPoint p;
    p.label = row.label;
    p.dim = row.dim;
    p.nu = row.nu;
    p.weight = weight_of(row.nu);
    p.mu = row.mu;
    return p;
}

bool weight_then_label(const RepPoint& a, const RepPoint& b) {
    if (a.nu != b.nu) return a.nu < b.nu;
    return a.label < b.label;
}

}  // namespace

SpectralModel SpectralModel::torus() {
    SpectralModel m;
    m.kind_ = ModelKind::Torus1;
    m.eigen_bound_ = 1.0;
    m.growth_constant_ = torus_growth_scan();
    m.unbounded_ = true;
    return m;
}

SpectralModel SpectralModel::su2() {
    SpectralModel m;
    m.kind_ = ModelKind::SU2;
    m.eigen_bound_ = 1.0;
    m.growth_constant_ = su2_growth_scan();
    m.unbounded_ = true;
    return m;
}

SpectralModel SpectralModel::custom(std::vector<CustomRow> rows, bool unbounded,
                                    double growth_constant) {
    std::set<int> labels;
    double bound = 0.0;
    double derived_growth = std::numeric_limits<double>::infinity();
    for (auto& row : rows) {
        if (!labels.insert(row.label).second)
            throw ModelError("duplicate label " + std::to_string(row.label) + " in custom table");
        if (row.dim <= 0) throw ModelError("non-positive dim for label " + std::to_string(row.label));
        if (static_cast<int>(row.mu.size()) != row.dim)
            throw ModelError("mu list size differs from dim for label " + std::to_string(row.label));
        if (row.nu < Rational(0)) throw ModelError("negative nu for label " + std::to_string(row.label));
        std::sort(row.mu.begin(), row.mu.end());
        double w = weight_of(row.nu);
        for (const auto& m : row.mu) bound = std::max(bound, std::abs(to_double(m)) / w);
        double top = to_double(row.mu.back());
        if (top > 0) derived_growth = std::min(derived_growth, top / std::sqrt(w));
    }
    SpectralModel m;
    m.kind_ = ModelKind::CustomTable;
    // Slack of a few ulps so |mu| <= C * weight holds after rounding.
    m.eigen_bound_ = bound > 0 ? bound * (1.0 + 8 * std::numeric_limits<double>::epsilon()) : 1.0;
    m.unbounded_ = unbounded;
    if (growth_constant > 0) {
        m.growth_constant_ = growth_constant;
    } else {
        m.growth_constant_ = std::isfinite(derived_growth) ? derived_growth : 0.0;
    }
    std::sort(rows.begin(), rows.end(), [](const CustomRow& a, const CustomRow& b) {
        return a.label < b.label;
    });
    m.rows_ = std::move(rows);
    return m;
}

RepPoint SpectralModel::rep(int label) const {
    switch (kind_) {
        case ModelKind::Torus1: return torus_rep(label);
        case ModelKind::SU2:
            if (label < 0) throw ModelError("SU2 label must be non-negative");
            return su2_rep(label);
        case ModelKind::CustomTable:
            for (const auto& row : rows_)
                if (row.label == label) return custom_rep(row);
            throw ModelError("label " + std::to_string(label) + " not in custom table");
    }
    throw ModelError("unknown model kind");
}

std::vector<RepPoint> enumerate_reps(const SpectralModel& model, int max_label) {
    if (max_label < 0) throw DomainError("max_label must be non-negative");
    std::vector<RepPoint> out;
    switch (model.kind()) {
        case ModelKind::Torus1:
            for (int n = -max_label; n <= max_label; ++n) out.push_back(torus_rep(n));
            break;
        case ModelKind::SU2:
            for (int L = 0; L <= max_label; ++L) out.push_back(su2_rep(L));
            break;
        case ModelKind::CustomTable:
            for (const auto& row : model.rows())
                if (row.label <= max_label) out.push_back(custom_rep(row));
            break;
    }
    std::stable_sort(out.begin(), out.end(), weight_then_label);
    return out;
}

std::vector<GrowthPoint> growth_sequence(const SpectralModel& model, int count) {
    if (count < 0) throw DomainError("count must be non-negative");
    if (!model.unbounded()) throw NoGrowthSequence("model has bounded symbol eigenvalues");
    std::vector<GrowthPoint> out;
    switch (model.kind()) {
        case ModelKind::Torus1:
            for (int n = 1; n <= count; ++n) out.push_back({torus_rep(n), 1});
            break;
        case ModelKind::SU2:
            for (int l = 1; l <= count; ++l) {
                RepPoint p = su2_rep(2 * l);
                int r = p.dim;
                out.push_back({std::move(p), r});
            }
            break;
        case ModelKind::CustomTable: {
            auto reps = enumerate_reps(model, std::numeric_limits<int>::max());
            double g = model.growth_constant();
            double last_weight = -1.0;
            for (auto& p : reps) {
                if (static_cast<int>(out.size()) == count) break;
                double top = p.top_mu();
                if (g <= 0 || top <= 0 || top < g * std::sqrt(p.weight)) continue;
                if (p.weight <= last_weight) continue;
                last_weight = p.weight;
                int r = p.dim;
                out.push_back({std::move(p), r});
            }
            if (static_cast<int>(out.size()) < count)
                throw NoGrowthSequence("custom table has only " + std::to_string(out.size()) +
                                       " reps satisfying the growth bound");
            break;
        }
    }
    return out;
}

namespace {

std::string trim_copy(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int_field(const std::string& s, int line, const std::string& field) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected integer for " + field + ": '" + s + "'", line, field);
    }
    if (used != s.size()) throw ParseError("trailing characters in " + field + ": '" + s + "'", line, field);
    return v;
}

Rational parse_rational_field(const std::string& s, int line, const std::string& field) {
    try {
        return parse_rational(s);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), line, field);
    }
}

}  // namespace

SpectralModel parse_custom_table(std::string_view text) {
    std::vector<CustomRow> rows;
    bool unbounded = false;
    double growth = 0.0;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim_copy(raw);
        if (line.empty() || line[0] == '#') continue;
        if (auto eq = line.find('='); eq != std::string::npos) {
            std::string key = trim_copy(std::string_view(line).substr(0, eq));
            std::string value = trim_copy(std::string_view(line).substr(eq + 1));
            if (key == "unbounded") {
                if (value == "true") unbounded = true;
                else if (value == "false") unbounded = false;
                else throw ParseError("unbounded must be true or false", line_no, key);
            } else if (key == "growth_constant") {
                growth = to_double(parse_rational_field(value, line_no, key));
                if (!(growth > 0)) throw ParseError("growth_constant must be positive", line_no, key);
            } else {
                throw ParseError("unknown directive '" + key + "'", line_no, key);
            }
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        std::istringstream fs(line);
        while (std::getline(fs, cur, ',')) fields.push_back(trim_copy(cur));
        if (fields.size() != 4)
            throw ParseError("expected 4 comma-separated fields (label, dim, nu, mu-list)", line_no, "row");
        CustomRow row;
        row.label = parse_int_field(fields[0], line_no, "label");
        row.dim = parse_int_field(fields[1], line_no, "dim");
        row.nu = parse_rational_field(fields[2], line_no, "nu");
        std::istringstream ms(fields[3]);
        std::string tok;
        while (ms >> tok) row.mu.push_back(parse_rational_field(tok, line_no, "mu"));
        if (static_cast<int>(row.mu.size()) != row.dim)
            throw ParseError("mu list has " + std::to_string(row.mu.size()) + " entries, dim is " +
                                 std::to_string(row.dim),
                             line_no, "mu");
        rows.push_back(std::move(row));
    }
    return SpectralModel::custom(std::move(rows), unbounded, growth);
}

SpectralModel load_custom_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("cannot open custom table: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_custom_table(ss.str());
}

std::string format_custom_table(const SpectralModel& model) {
    std::ostringstream out;
    out << "unbounded = " << (model.unbounded() ? "true" : "false") << "\n";
    if (model.growth_constant() > 0) {
        // growth constants are stored as reals; write enough digits to round-trip via decimal
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12e", model.growth_constant());
        out << "growth_constant = " << buf << "\n";
    }
    for (const auto& row : model.rows()) {
        out << row.label << ", " << row.dim << ", " << to_string(row.nu) << ",";
        for (const auto& m : row.mu) out << " " << to_string(m);
        out << "\n";
    }
    return out.str();
}

}  // namespace hypo
