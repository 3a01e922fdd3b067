#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace qsa::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kIoError = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericFailure = 3;

// files produced by one command, written together once the run finishes
struct Artifacts {
    std::map<std::string, std::string> files;
    void add(const std::string& name, std::string content) { files[name] = std::move(content); }
    // each file goes to <name>.tmp first and is renamed into place
    void commit(const std::string& dir) const;
};

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qsa::cli
