#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hypo {

using Rational = boost::rational<std::int64_t>;

// Boost 1.74 recurses forever on rational<int64_t> compared with a plain
// int; always compare against a Rational.

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = Rational(0)) : re(r), im(i) {}
    GaussianRational(std::int64_t r) : re(r) {}

    std::complex<double> to_complex() const;
    bool is_zero() const { return re == Rational(0) && im == Rational(0); }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

double to_double(const Rational& r);
Rational floor_rational(const Rational& r);
bool is_integer(const Rational& r);

// Squared modulus; exact.
Rational norm(const GaussianRational& z);

/// Parses "p", "p/q" or a finite decimal ("-1.25", "3e-2") into an exact
/// rational. Throws DomainError on malformed input, NaN/Inf, or overflow.
Rational parse_rational(std::string_view text);

/// Best-effort exact form of a double: succeeds only when the value is a
/// dyadic rational with denominator at most 2^max_log2_den.
std::optional<Rational> dyadic_rational(double x, int max_log2_den = 30);

std::string to_string(const Rational& r);
std::string to_string(const GaussianRational& z);

}  // namespace hypo
