#pragma once

#include <string>
#include <vector>

namespace qsa::checks {

struct Clause {
    std::string what;
    bool ok = false;
};

struct CheckResult {
    int id = 0;
    std::string title;
    std::vector<Clause> clauses;
    double seconds = 0.0;
    double limit = 0.0;  // runtime budget, s

    bool passed() const;
};

// acceptance criteria computed directly from the library; id 13 needs the CLI
std::vector<int> library_check_ids();
CheckResult run_check(int id);

std::string summary_line(const CheckResult& r);

}  // namespace qsa::checks
