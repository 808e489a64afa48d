// Command-line front end: `analyze` for fan files, `resolve` for cover
// files. Multiple analyze inputs run in parallel; output order follows the
// sorted input paths so runs are reproducible.

#include <algorithm>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torictk/io.hpp"
#include "torictk/report.hpp"

namespace {

int exit_code_for(torictk::ErrorKind kind) {
    switch (kind) {
        case torictk::ErrorKind::Parse: return 2;
        case torictk::ErrorKind::Budget: return 3;
        case torictk::ErrorKind::Validation:
        case torictk::ErrorKind::Domain: return 1;
    }
    return 1;
}

std::vector<long long> parse_tuple(const std::string& text, const std::string& flag) {
    std::vector<long long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw torictk::Error(torictk::ErrorKind::Parse, flag + ": bad integer '" + item + "'");
        }
    }
    if (out.empty()) throw torictk::Error(torictk::ErrorKind::Parse, flag + ": empty tuple");
    return out;
}

struct RunResult {
    std::string path;
    std::string text;
    int code = 0;
};

RunResult run_analyze(const std::string& path, const torictk::AnalyzeOptions& opt, bool json) {
    RunResult result;
    result.path = path;
    try {
        std::string bytes = torictk::read_file(path);
        torictk::Fan fan = torictk::parse_fan_file(path);
        torictk::Report report = torictk::analyze_fan(fan, torictk::content_digest(bytes), opt);
        result.text = json ? report.doc.dump(2) + "\n" : torictk::render_text(report);
        result.code = report.ok ? 0 : 1;
    } catch (const torictk::Error& e) {
        result.text = std::string("error: ") + e.what() + "\n";
        result.code = exit_code_for(e.kind());
    } catch (const std::exception& e) {
        result.text = std::string("error: ") + e.what() + "\n";
        result.code = 1;
    }
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toric fan / stability / resolution toolkit"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "validate a fan file and compute its invariants");
    std::vector<std::string> fan_paths;
    std::string degrees_arg, shift_arg;
    long long m_arg = -1;
    bool json_out = false, allow_incomplete = false;
    analyze->add_option("paths", fan_paths, "fan files (JSON)")->required()->expected(-1);
    analyze->add_option("--degrees", degrees_arg, "degree tuple d1,...,dr");
    analyze->add_option("--m", m_arg, "source dimension m");
    analyze->add_option("--shift", shift_arg, "stabilization shift a1,...,ar");
    analyze->add_flag("--json", json_out, "emit the structured report");
    analyze->add_flag("--allow-incomplete", allow_incomplete,
                      "certify connectivity for non-complete fans too");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "resolve a finite cover file");
    std::string cover_path;
    int truncate_arg = 0;
    bool resolve_json = false;
    resolve->add_option("path", cover_path, "cover file (JSON)")->required();
    resolve->add_option("--truncate", truncate_arg, "truncate the resolution after level K");
    resolve->add_flag("--json", resolve_json, "emit the structured report");

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) {
        torictk::AnalyzeOptions opt;
        opt.allow_incomplete = allow_incomplete;
        try {
            if (!degrees_arg.empty()) opt.degrees = parse_tuple(degrees_arg, "--degrees");
            if (!shift_arg.empty()) opt.shift = parse_tuple(shift_arg, "--shift");
            if (m_arg >= 0) opt.m = m_arg;
        } catch (const torictk::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return exit_code_for(e.kind());
        }

        std::sort(fan_paths.begin(), fan_paths.end());
        std::vector<std::future<RunResult>> jobs;
        jobs.reserve(fan_paths.size());
        for (const auto& path : fan_paths)
            jobs.push_back(std::async(std::launch::async, run_analyze, path, opt, json_out));
        int code = 0;
        bool first = true;
        for (auto& job : jobs) {
            RunResult r = job.get();
            if (!first) std::cout << "\n";
            if (fan_paths.size() > 1) std::cout << "=== " << r.path << " ===\n";
            std::cout << r.text;
            code = std::max(code, r.code);
            first = false;
        }
        return code;
    }

    // resolve
    try {
        std::string bytes = torictk::read_file(cover_path);
        torictk::FiniteCover cover = torictk::parse_cover_file(cover_path);
        if (truncate_arg < 0)
            throw torictk::Error(torictk::ErrorKind::Domain, "--truncate must be positive");
        torictk::Report report =
            torictk::resolve_cover(cover, torictk::content_digest(bytes), truncate_arg);
        std::cout << (resolve_json ? report.doc.dump(2) + "\n" : torictk::render_text(report));
        return report.ok ? 0 : 1;
    } catch (const torictk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
