#include "hypo/trig_poly.hpp"

#include "hypo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace hypo {

TrigPoly::TrigPoly(const std::map<int, Complex>& coeffs) {
    int deg = 0;
    for (const auto& [n, c] : coeffs) deg = std::max(deg, std::abs(n));
    degree_ = deg;
    coeffs_.assign(static_cast<std::size_t>(2 * deg + 1), Complex(0.0));
    for (const auto& [n, c] : coeffs) coeffs_[static_cast<std::size_t>(n + deg)] += c;
    trim();
}

TrigPoly TrigPoly::constant(Complex value) { return TrigPoly(std::map<int, Complex>{{0, value}}); }

TrigPoly TrigPoly::exact(const std::map<int, GaussianRational>& coeffs, const std::map<int, Complex>* values) {
    std::map<int, Complex> rounded;
    for (const auto& [n, c] : coeffs) rounded[n] = c.to_complex();
    TrigPoly p(values ? *values : rounded);
    std::map<int, GaussianRational> kept;
    for (const auto& [n, c] : coeffs)
        if (!c.is_zero()) kept[n] = c;
    p.exact_ = std::move(kept);
    return p;
}

TrigPoly TrigPoly::from_rows(const std::vector<std::tuple<int, double, double>>& rows) {
    std::map<int, Complex> coeffs;
    for (const auto& [n, re, im] : rows) {
        if (!std::isfinite(re) || !std::isfinite(im))
            throw DomainError("non-finite coefficient at frequency " + std::to_string(n));
        if (!coeffs.emplace(n, Complex(re, im)).second)
            throw DomainError("duplicate frequency " + std::to_string(n));
    }
    return TrigPoly(coeffs);
}

void TrigPoly::trim() {
    int deg = degree_;
    while (deg > 0 && coeffs_[static_cast<std::size_t>(deg + degree_)] == Complex(0.0) &&
           coeffs_[static_cast<std::size_t>(degree_ - deg)] == Complex(0.0)) {
        --deg;
    }
    if (deg != degree_) {
        std::vector<Complex> c(static_cast<std::size_t>(2 * deg + 1));
        for (int n = -deg; n <= deg; ++n)
            c[static_cast<std::size_t>(n + deg)] = coeffs_[static_cast<std::size_t>(n + degree_)];
        coeffs_ = std::move(c);
        degree_ = deg;
    }
}

Complex TrigPoly::coeff(int n) const {
    if (std::abs(n) > degree_) return Complex(0.0);
    return coeffs_[static_cast<std::size_t>(n + degree_)];
}

std::optional<GaussianRational> TrigPoly::exact_coeff(int n) const {
    if (!exact_) return std::nullopt;
    auto it = exact_->find(n);
    if (it == exact_->end()) return GaussianRational{};
    return it->second;
}

Complex TrigPoly::operator()(double t) const {
    if (degree_ == 0) return coeffs_[0];
    // Horner in z = e^{it} on the shifted polynomial, then undo the shift.
    const Complex z(std::cos(t), std::sin(t));
    Complex acc = coeffs_.back();
    for (int k = 2 * degree_ - 1; k >= 0; --k) acc = acc * z + coeffs_[static_cast<std::size_t>(k)];
    const double shift = -degree_ * t;
    return acc * Complex(std::cos(shift), std::sin(shift));
}

TrigPoly TrigPoly::derivative() const {
    std::map<int, Complex> c;
    for (int n = -degree_; n <= degree_; ++n)
        if (n != 0) c[n] = coeff(n) * Complex(0.0, n);
    return TrigPoly(c);
}

TrigPoly TrigPoly::zero_mean_primitive() const {
    std::map<int, Complex> c;
    Complex at_zero(0.0);
    for (int n = -degree_; n <= degree_; ++n) {
        if (n == 0) continue;
        Complex v = coeff(n) / Complex(0.0, n);
        c[n] = v;
        at_zero += v;
    }
    c[0] = -at_zero;
    return TrigPoly(c);
}

TrigPoly TrigPoly::real_part() const {
    std::map<int, Complex> c;
    for (int n = -degree_; n <= degree_; ++n) c[n] = 0.5 * (coeff(n) + std::conj(coeff(-n)));
    TrigPoly out(c);
    if (exact_) {
        std::map<int, GaussianRational> e;
        for (int n = -degree_; n <= degree_; ++n) {
            auto a = *exact_coeff(n);
            auto b = *exact_coeff(-n);
            e[n] = {(a.re + b.re) / 2, (a.im - b.im) / 2};
        }
        out = exact(e);
    }
    return out;
}

TrigPoly TrigPoly::imag_part() const {
    // Im f = (f - conj f) / (2i): coefficient (p_n - conj p_{-n}) / (2i)
    std::map<int, Complex> c;
    for (int n = -degree_; n <= degree_; ++n)
        c[n] = (coeff(n) - std::conj(coeff(-n))) / Complex(0.0, 2.0);
    TrigPoly out(c);
    if (exact_) {
        std::map<int, GaussianRational> e;
        for (int n = -degree_; n <= degree_; ++n) {
            auto a = *exact_coeff(n);
            auto b = *exact_coeff(-n);
            // (x + iy) / (2i) = (y - ix) / 2 with x + iy = a - conj(b)
            Rational x = a.re - b.re;
            Rational y = a.im + b.im;
            e[n] = {y / 2, -x / 2};
        }
        out = exact(e);
    }
    return out;
}

bool TrigPoly::is_real(double tol) const {
    double scale = std::max(1.0, coeff_l1());
    for (int n = 0; n <= degree_; ++n)
        if (std::abs(coeff(n) - std::conj(coeff(-n))) > tol * scale) return false;
    return true;
}

bool TrigPoly::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex(0.0); });
}

double TrigPoly::coeff_l1() const {
    double s = 0.0;
    for (auto c : coeffs_) s += std::abs(c);
    return s;
}

namespace {

std::optional<std::map<int, GaussianRational>> combine_exact(
    const TrigPoly& a, const TrigPoly& b, int sign) {
    if (!a.has_exact() || !b.has_exact()) return std::nullopt;
    std::map<int, GaussianRational> out;
    int deg = std::max(a.degree(), b.degree());
    for (int n = -deg; n <= deg; ++n) {
        GaussianRational v = *a.exact_coeff(n);
        GaussianRational w = *b.exact_coeff(n);
        out[n] = sign > 0 ? v + w : v - w;
    }
    return out;
}

}  // namespace

TrigPoly TrigPoly::operator+(const TrigPoly& other) const {
    if (auto e = combine_exact(*this, other, +1)) return exact(*e);
    std::map<int, Complex> c;
    int deg = std::max(degree_, other.degree_);
    for (int n = -deg; n <= deg; ++n) c[n] = coeff(n) + other.coeff(n);
    return TrigPoly(c);
}

TrigPoly TrigPoly::operator-(const TrigPoly& other) const {
    if (auto e = combine_exact(*this, other, -1)) return exact(*e);
    std::map<int, Complex> c;
    int deg = std::max(degree_, other.degree_);
    for (int n = -deg; n <= deg; ++n) c[n] = coeff(n) - other.coeff(n);
    return TrigPoly(c);
}

TrigPoly TrigPoly::operator*(const TrigPoly& other) const {
    std::map<int, Complex> c;
    for (int n = -degree_; n <= degree_; ++n)
        for (int m = -other.degree_; m <= other.degree_; ++m) c[n + m] += coeff(n) * other.coeff(m);
    return TrigPoly(c);
}

TrigPoly TrigPoly::operator*(Complex scale) const {
    std::map<int, Complex> c;
    for (int n = -degree_; n <= degree_; ++n) c[n] = coeff(n) * scale;
    return TrigPoly(c);
}

std::vector<std::tuple<int, double, double>> TrigPoly::to_rows() const {
    std::vector<std::tuple<int, double, double>> rows;
    for (int n = -degree_; n <= degree_; ++n) {
        Complex c = coeff(n);
        if (c != Complex(0.0)) rows.emplace_back(n, c.real(), c.imag());
    }
    return rows;
}

Complex mean(const TrigPoly& p) { return p.mean(); }

TrigPoly zero_mean_primitive(const TrigPoly& p) { return p.zero_mean_primitive(); }

Complex window_integral(const TrigPoly& p, double t, double tau) {
    if (tau == 0.0) return Complex(0.0);
    TrigPoly C = p.zero_mean_primitive();
    return p.mean() * tau + C(t + tau) - C(t);
}

namespace {

double parse_real_field(const std::string& field, int line_no) {
    std::string s = field;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
        throw ParseError("bad coefficient '" + field + "'", line_no, "coefficient");
    return v;
}

}  // namespace

TrigPoly parse_trig_rows(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::map<int, GaussianRational> exact_rows;
    std::vector<std::tuple<int, double, double>> float_rows;
    bool all_exact = true;
    std::set<int> seen;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::vector<std::string> fields;
        std::string cur;
        std::istringstream fs(line);
        while (std::getline(fs, cur, ',')) fields.push_back(cur);
        if (fields.size() != 3) throw ParseError("expected 'n, re, im'", line_no, "row");
        int n = 0;
        try {
            std::size_t used = 0;
            std::string f0 = fields[0];
            f0.erase(0, f0.find_first_not_of(" \t"));
            f0.erase(f0.find_last_not_of(" \t\r") + 1);
            n = std::stoi(f0, &used);
            if (used != f0.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("bad frequency '" + fields[0] + "'", line_no, "n");
        }
        if (!seen.insert(n).second) throw ParseError("duplicate frequency", line_no, "n");
        double re = parse_real_field(fields[1], line_no);
        double im = parse_real_field(fields[2], line_no);
        float_rows.emplace_back(n, re, im);
        try {
            exact_rows[n] = {parse_rational(fields[1]), parse_rational(fields[2])};
        } catch (const DomainError&) {
            all_exact = false;  // e.g. 17-digit exponents overflow the int64 denominator
        }
    }
    TrigPoly floats = TrigPoly::from_rows(float_rows);
    if (!all_exact) return floats;
    // Keep the correctly rounded strtod values so text round-trips bit for bit.
    std::map<int, Complex> values;
    for (const auto& [n, re, im] : float_rows) values[n] = Complex(re, im);
    return TrigPoly::exact(exact_rows, &values);
}

std::string format_trig_rows(const TrigPoly& p) {
    std::ostringstream out;
    char buf[96];
    for (const auto& [n, re, im] : p.to_rows()) {
        std::snprintf(buf, sizeof buf, "%d, %.17g, %.17g\n", n, re, im);
        out << buf;
    }
    return out.str();
}

}  // namespace hypo
