#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hypo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

class NoGrowthSequence : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateWindow : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

class RecipeInapplicable : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

class ResidualError : public Error {
public:
    ResidualError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// Carries the best estimate reached before the panel budget ran out.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, std::complex<double> best, double error_estimate)
        : Error(what), best_(best), error_estimate_(error_estimate) {}
    std::complex<double> best_estimate() const { return best_; }
    double error_estimate() const { return error_estimate_; }

private:
    std::complex<double> best_;
    double error_estimate_;
};

// λ ∈ iℤ and the compatibility integral ∫ e^{λs} h(s) ds does not vanish.
class ResonanceObstruction : public Error {
public:
    ResonanceObstruction(const std::string& what, std::complex<double> integral)
        : Error(what), integral_(integral) {}
    std::complex<double> integral() const { return integral_; }

private:
    std::complex<double> integral_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, std::string field)
        : Error(what), line_(line), field_(std::move(field)) {}
    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

}  // namespace hypo
