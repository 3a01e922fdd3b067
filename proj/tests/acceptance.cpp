// One line per acceptance criterion; nonzero exit if any fails.
#include "checks.hpp"
#include "cli_helpers.hpp"

#include <fmt/format.h>

#include <chrono>
#include <iostream>

namespace fs = std::filesystem;

namespace {

// repro-all twice with the same seed (different thread counts) must give identical bytes
qsa::checks::CheckResult reproducibility() {
    using namespace qsa::testing;
    qsa::checks::CheckResult r;
    r.id = 13;
    r.title = "byte-identical repro-all";
    r.limit = 600.0;
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = scratch_dir("repro-a"), b = scratch_dir("repro-b");
    const auto ra = run({"repro-all", "--seed", "7", "--out", a.string()});
    const auto rb = run({"repro-all", "--seed", "7", "--jobs", "2", "--out", b.string()});
    r.clauses.push_back({fmt::format("exit codes {} and {} (0)", ra.code, rb.code), ra.code == 0 && rb.code == 0});
    const auto ta = tree(a), tb = tree(b);
    std::size_t differing = 0;
    for (const auto& [name, bytes] : ta) {
        const auto it = tb.find(name);
        if (it == tb.end() || it->second != bytes) ++differing;
    }
    r.clauses.push_back({fmt::format("{} files, {} differing, {} only in second run", ta.size(), differing,
                                     tb.size() > ta.size() ? tb.size() - ta.size() : 0),
                         !ta.empty() && differing == 0 && ta.size() == tb.size()});
    r.clauses.push_back({"report.json present", ta.count("report.json") == 1});
    fs::remove_all(a);
    fs::remove_all(b);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

int main() {
    int failed = 0;
    for (int id : qsa::checks::library_check_ids()) {
        const auto r = qsa::checks::run_check(id);
        std::cout << qsa::checks::summary_line(r) << "\n" << std::flush;
        failed += !r.passed();
    }
    const auto r = reproducibility();
    std::cout << qsa::checks::summary_line(r) << "\n" << std::flush;
    failed += !r.passed();
    std::cout << fmt::format("{} of 13 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
