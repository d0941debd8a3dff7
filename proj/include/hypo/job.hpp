#pragma once

// Declarative job files for the command-line tool. A job is a JSON object
// with "schema": 1 and a "command"; see README.md for the fields. Parsing
// rejects unknown fields and fills every default, so the resolved job can be
// written into each artifact.

#include "hypo/spectra.hpp"
#include "hypo/trig_poly.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hypo {

struct RhsEntry {
    int rep = 0;
    int r = 1;
    int s = 1;
    TrigPoly rows;
};

struct JobSpec {
    std::string command;
    nlohmann::json resolved;  // the job with defaults filled in
    std::optional<SpectralModel> model;  // absent only for a fixture-driven small_gap job
    TrigPoly c;
    Complex q{0.0};
    std::optional<GaussianRational> q_exact;
    int max_label = 40;
    int grid_size = 256;
    double residual_tol = 1e-8;
    double quad_tol = 1e-12;
    double resonance_eps = 1e-9;
    int scan_K = 200;
    std::vector<double> M_grid{0.0, 1.0, 2.0, 4.0, 8.0};
    double stability = 0.5;
    std::vector<RhsEntry> rhs;
    // counterexample / verify
    std::string recipe = "auto";
    std::string variant = "auto";
    int count = 16;
    int fixture_rows = 0;
    std::vector<std::tuple<int, int, int>> witnesses;  // label, r, j
    // probe
    nlohmann::json probe_x;
    int probe_depth = 30;
    double probe_M = 0.0;
};

/// Throws ParseError carrying the 1-based line (0 if unknown) and the
/// offending field path, e.g. "c[2][1]".
JobSpec parse_job(const std::string& text, const std::string& base_dir = ".");

struct RunResult {
    int exit_code = 0;  // 0 success, 2 undecided, 1 error
    std::vector<std::string> artifacts;
    std::string message;
};

/// Executes the job, writing artifacts into out_dir (created if missing).
/// Library errors are caught and reported with exit code 1.
RunResult run_job(const JobSpec& job, const std::string& out_dir, int threads = 1, std::ostream* log = nullptr);

}  // namespace hypo
