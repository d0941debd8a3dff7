#include "hypo/rational.hpp"

#include "hypo/errors.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace hypo {

std::complex<double> GaussianRational::to_complex() const {
    return {to_double(re), to_double(im)};
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational floor_rational(const Rational& r) {
    std::int64_t n = r.numerator();
    std::int64_t d = r.denominator();  // always > 0
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return Rational(q);
}

bool is_integer(const Rational& r) { return r.denominator() == 1; }

Rational norm(const GaussianRational& z) { return z.re * z.re + z.im * z.im; }

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max() / 10;

std::int64_t checked_mul10_add(std::int64_t v, int digit, std::string_view text) {
    if (v > kMax) throw DomainError("rational literal overflows: " + std::string(text));
    return v * 10 + digit;
}

std::int64_t pow10(int e, std::string_view text) {
    std::int64_t p = 1;
    for (int i = 0; i < e; ++i) p = checked_mul10_add(p, 0, text);
    return p;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    if (s.empty()) throw DomainError("empty number");
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        ++i;
    }
    std::int64_t mant = 0;
    int frac_digits = 0;
    bool any = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            mant = checked_mul10_add(mant, ch - '0', whole);
            if (seen_dot) ++frac_digits;
            any = true;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw DomainError("malformed number: " + std::string(whole));
    int exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw DomainError("malformed number: " + std::string(whole));
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw DomainError("malformed exponent: " + std::string(whole));
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw DomainError("malformed exponent: " + std::string(whole));
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 18) throw DomainError("rational literal overflows: " + std::string(whole));
        }
        if (eneg) exponent = -exponent;
    }
    int scale = exponent - frac_digits;
    Rational r(neg ? -mant : mant);
    if (scale > 0) {
        r *= Rational(pow10(scale, whole));
    } else if (scale < 0) {
        r /= Rational(pow10(-scale, whole));
    }
    return r;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw DomainError("empty number");
    for (char ch : s) {
        if (std::isalpha(static_cast<unsigned char>(ch)) && ch != 'e' && ch != 'E')
            throw DomainError("not a finite rational: " + std::string(text));
    }
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return parse_decimal(s, text);
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == Rational(0)) throw DomainError("zero denominator: " + std::string(text));
    return num / den;
}

std::optional<Rational> dyadic_rational(double x, int max_log2_den) {
    if (!std::isfinite(x)) return std::nullopt;
    double scaled = x;
    std::int64_t den = 1;
    for (int k = 0; k <= max_log2_den; ++k) {
        if (scaled == std::floor(scaled) && std::abs(scaled) < 9.0e15) {
            return Rational(static_cast<std::int64_t>(scaled), den);
        }
        scaled *= 2.0;
        den *= 2;
    }
    return std::nullopt;
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const GaussianRational& z) {
    return to_string(z.re) + (z.im < Rational(0) ? " - " : " + ") + to_string(boost::abs(z.im)) + "i";
}

}  // namespace hypo
