#include "hypo/field.hpp"

#include "hypo/errors.hpp"

#include <cstdio>
#include <set>

namespace hypo {

double FieldEntry::sup_norm() const {
    double m = 0.0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void check_index(const RepPoint& rep, int r, int s) {
    if (r < 1 || r > rep.dim || s < 1 || s > rep.dim)
        throw DomainError("matrix index (" + std::to_string(r) + "," + std::to_string(s) +
                          ") outside rep " + std::to_string(rep.label) + " of dimension " +
                          std::to_string(rep.dim));
}

}  // namespace

void CoefficientField::set(const RepPoint& rep, int r, int s, const PeriodicFn& fn) {
    check_index(rep, r, s);
    FieldEntry e{rep, r, s, fn.sample(grid_size_), fn};
    entries_.insert_or_assign(e.key(), std::move(e));
}

void CoefficientField::set_samples(const RepPoint& rep, int r, int s, std::vector<Complex> samples) {
    check_index(rep, r, s);
    if (static_cast<int>(samples.size()) != grid_size_)
        throw DomainError("sample count " + std::to_string(samples.size()) + " differs from grid size " +
                          std::to_string(grid_size_));
    FieldEntry e{rep, r, s, std::move(samples), std::nullopt};
    entries_.insert_or_assign(e.key(), std::move(e));
}

const FieldEntry* CoefficientField::find(const FieldKey& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<RepPoint> CoefficientField::reps() const {
    std::vector<RepPoint> out;
    std::set<int> seen;
    for (const auto& [key, e] : entries_)
        if (seen.insert(key.label).second) out.push_back(e.rep);
    return out;
}

void write_field_csv(std::ostream& out, const CoefficientField& field,
                     const std::vector<std::pair<std::string, std::string>>& metadata) {
    out << "# model=" << field.model_name() << "\n";
    out << "# grid_size=" << field.grid_size() << "\n";
    for (const auto& [k, v] : metadata) out << "# " << k << "=" << v << "\n";
    out << "rep_label,r,s,grid_index,t,re,im\n";
    char buf[160];
    const int n = field.grid_size();
    for (const auto& [key, e] : field.entries()) {
        for (int j = 0; j < n; ++j) {
            const Complex v = e.samples[static_cast<std::size_t>(j)];
            std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%.17g,%.17g,%.17g\n", key.label, key.r, key.s, j,
                          kTwoPi * j / n, v.real(), v.imag());
            out << buf;
        }
    }
}

}  // namespace hypo
