#include "hypo/errors.hpp"
#include "hypo/job.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"hypo: global hypoellipticity of d/dt + c(t) X + q on T x G"};
    std::string job_path;
    std::string out_dir = ".";
    int threads = 1;
    bool verbose = false;
    app.add_option("--job", job_path, "job file (JSON, schema 1)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "log progress to stderr");
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(job_path);
    if (!in) {
        std::cerr << "error: cannot read " << job_path << "\n";
        return 1;
    }
    std::stringstream text;
    text << in.rdbuf();

    hypo::JobSpec job;
    try {
        auto base = std::filesystem::path(job_path).parent_path().string();
        job = hypo::parse_job(text.str(), base.empty() ? "." : base);
    } catch (const hypo::ParseError& e) {
        std::cerr << job_path << ":" << e.line() << ": " << e.what() << "\n";
        return 1;
    }

    hypo::RunResult r = hypo::run_job(job, out_dir, threads, verbose ? &std::cerr : nullptr);
    for (const auto& a : r.artifacts) std::cout << (std::filesystem::path(out_dir) / a).string() << "\n";
    if (r.exit_code == 1)
        std::cerr << "error: " << r.message << "\n";
    else if (verbose)
        std::cerr << r.message << "\n";
    return r.exit_code;
}
