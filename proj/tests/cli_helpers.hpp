#pragma once

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace qsa::testing {

struct CliResult {
    int code = 0;
    std::string out, err;
};

inline CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "qsa");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    CliResult r;
    r.code = qsa::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// relative path -> bytes for every file below root
inline std::map<std::string, std::string> tree(const std::filesystem::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(root))
        if (e.is_regular_file()) files[std::filesystem::relative(e.path(), root).string()] = slurp(e.path());
    return files;
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
    std::random_device rd;
    auto p = std::filesystem::temp_directory_path() / ("qsa-" + tag + "-" + std::to_string(rd()));
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace qsa::testing
