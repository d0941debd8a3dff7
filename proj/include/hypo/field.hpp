#pragma once

// Partial Fourier data: for every rep and matrix index (r, s), a periodic
// function of t sampled on the uniform grid.

#include "hypo/periodic_fn.hpp"
#include "hypo/spectra.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace hypo {

struct FieldKey {
    int label = 0;
    int r = 1;
    int s = 1;
    auto operator<=>(const FieldKey&) const = default;
};

struct FieldEntry {
    RepPoint rep;
    int r = 1;
    int s = 1;
    std::vector<Complex> samples;  // t_j = 2πj/grid_size
    std::optional<PeriodicFn> fn;  // exact callable when known (right-hand sides)

    FieldKey key() const { return {rep.label, r, s}; }
    double mu() const { return rep.mu_value(r); }
    double sup_norm() const;
};

/// Ordered by (label, r, s). Entries share one grid size.
class CoefficientField {
public:
    CoefficientField() = default;
    CoefficientField(std::string model_name, int grid_size) : model_(std::move(model_name)), grid_size_(grid_size) {}

    /// Samples fn on the grid; replaces an existing entry with the same key.
    /// r and s are 1-based and must not exceed rep.dim (DomainError).
    void set(const RepPoint& rep, int r, int s, const PeriodicFn& fn);
    void set_samples(const RepPoint& rep, int r, int s, std::vector<Complex> samples);

    const FieldEntry* find(const FieldKey& key) const;
    const std::map<FieldKey, FieldEntry>& entries() const { return entries_; }
    std::map<FieldKey, FieldEntry>& entries() { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    const std::string& model_name() const { return model_; }
    int grid_size() const { return grid_size_; }

    /// Distinct reps present, in label order.
    std::vector<RepPoint> reps() const;

private:
    std::string model_ = "Torus1";
    int grid_size_ = 256;
    std::map<FieldKey, FieldEntry> entries_;
};

/// CSV dump: '#'-prefixed metadata lines (model, grid_size, any extra
/// key/value pairs), then rep_label,r,s,grid_index,t,re,im with %.17g.
void write_field_csv(std::ostream& out, const CoefficientField& field,
                     const std::vector<std::pair<std::string, std::string>>& metadata = {});

}  // namespace hypo
