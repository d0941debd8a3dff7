#pragma once

#include "hypo/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace hypo {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

/// Complex trigonometric polynomial p(t) = sum_{|n|<=N} p_n e^{int}.
///
/// Coefficients are doubles. A polynomial built from exact rows also keeps
/// the exact Gaussian-rational coefficients, which the arithmetic
/// (Diophantine) layer reads through exact_coeff()/exact_mean().
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(const std::map<int, Complex>& coeffs);

    static TrigPoly constant(Complex value);
    /// `values`, when given, supplies the double coefficients instead of
    /// rounding the rationals.
    static TrigPoly exact(const std::map<int, GaussianRational>& coeffs,
                          const std::map<int, Complex>* values = nullptr);
    /// Rows (n, re, im); frequencies must be unique (DomainError otherwise).
    static TrigPoly from_rows(const std::vector<std::tuple<int, double, double>>& rows);

    int degree() const { return degree_; }
    Complex coeff(int n) const;
    const std::vector<Complex>& dense() const { return coeffs_; }  // index n + degree

    bool has_exact() const { return exact_.has_value(); }
    std::optional<GaussianRational> exact_coeff(int n) const;
    std::optional<GaussianRational> exact_mean() const { return exact_coeff(0); }

    Complex operator()(double t) const;
    Complex mean() const { return coeff(0); }

    TrigPoly derivative() const;
    /// C with C(0) = 0 and C' = p - mean(p).
    TrigPoly zero_mean_primitive() const;

    /// Function-level real and imaginary parts (both real-valued).
    TrigPoly real_part() const;
    TrigPoly imag_part() const;
    bool is_real(double tol = 1e-12) const;
    bool is_zero() const;

    /// sum |p_n|, an upper bound for sup |p|.
    double coeff_l1() const;

    TrigPoly operator+(const TrigPoly& other) const;
    TrigPoly operator-(const TrigPoly& other) const;
    TrigPoly operator*(const TrigPoly& other) const;
    TrigPoly operator*(Complex scale) const;
    TrigPoly operator-() const { return *this * Complex(-1.0); }

    std::vector<std::tuple<int, double, double>> to_rows() const;

private:
    void trim();

    int degree_ = 0;
    std::vector<Complex> coeffs_{Complex(0.0)};
    std::optional<std::map<int, GaussianRational>> exact_;
};

Complex mean(const TrigPoly& p);
TrigPoly zero_mean_primitive(const TrigPoly& p);

/// int_t^{t+tau} p(w) dw, exact via the primitive.
Complex window_integral(const TrigPoly& p, double t, double tau);

/// Text form: one "n, re, im" row per line, '#' comments allowed.
TrigPoly parse_trig_rows(std::string_view text);
std::string format_trig_rows(const TrigPoly& p);

}  // namespace hypo
