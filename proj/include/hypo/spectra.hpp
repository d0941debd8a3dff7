#pragma once

// Enumerable spectral models of compact groups. Each irreducible class is a
// RepPoint carrying its dimension, Laplace eigenvalue, weight
// <eta> = (1 + nu)^{1/2} and the real eigenvalues mu_r of the vector field
// symbol sigma_X(eta) = i diag(mu_r).

#include "hypo/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hypo {

struct RepPoint {
    // Torus: the frequency n. SU(2): twice the spin, so half-integer spins
    // stay integral.
    int label = 0;
    int dim = 1;
    Rational nu{0};
    double weight = 1.0;
    std::vector<Rational> mu;  // ascending, size == dim

    double mu_value(int r) const { return to_double(mu.at(static_cast<std::size_t>(r - 1))); }
    double top_mu() const { return to_double(mu.back()); }
};

enum class ModelKind { Torus1, SU2, CustomTable };

std::string to_string(ModelKind kind);

struct CustomRow {
    int label = 0;
    int dim = 1;
    Rational nu{0};
    std::vector<Rational> mu;
};

class SpectralModel {
public:
    static SpectralModel torus();
    static SpectralModel su2();
    /// Validates every row; duplicate labels or malformed rows throw ModelError.
    /// growth_constant <= 0 means "derive from the table".
    static SpectralModel custom(std::vector<CustomRow> rows, bool unbounded,
                                double growth_constant = 0.0);

    ModelKind kind() const { return kind_; }
    std::string name() const { return to_string(kind_); }
    double eigen_bound() const { return eigen_bound_; }
    double growth_constant() const { return growth_constant_; }
    bool unbounded() const { return unbounded_; }
    const std::vector<CustomRow>& rows() const { return rows_; }

    /// Builds the full RepPoint for one label; throws ModelError when the
    /// label is not part of the model.
    RepPoint rep(int label) const;

private:
    ModelKind kind_ = ModelKind::Torus1;
    double eigen_bound_ = 1.0;
    double growth_constant_ = 0.0;
    bool unbounded_ = true;
    std::vector<CustomRow> rows_;
};

/// All reps with |label| <= max_label (torus) or label <= max_label
/// (SU(2), custom), sorted by weight then label.
std::vector<RepPoint> enumerate_reps(const SpectralModel& model, int max_label);

struct GrowthPoint {
    RepPoint rep;
    int r = 1;  // 1-based index of the top eigenvalue (r = dim)
};

/// `count` reps with mu_top >= growth_constant * weight^{1/2} and strictly
/// increasing weight. Bounded models throw NoGrowthSequence.
std::vector<GrowthPoint> growth_sequence(const SpectralModel& model, int count);

/// Reads a custom table:
///   # comment
///   unbounded = true|false
///   growth_constant = <real>
///   <label>, <dim>, <nu>, <mu_1> <mu_2> ... <mu_dim>
/// nu and mu are exact rationals ("3", "1/2", "0.25"). Any malformed line
/// throws ParseError carrying the line number.
SpectralModel parse_custom_table(std::string_view text);
SpectralModel load_custom_table(const std::string& path);
std::string format_custom_table(const SpectralModel& model);

}  // namespace hypo
