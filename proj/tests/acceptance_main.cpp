#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "cofil/acceptance.hpp"

// Runs the full verification matrix and prints one pass/fail line per
// criterion.  Exits nonzero when any criterion fails.
int main(int argc, char** argv) {
    uint64_t seed = 2026;
    for (int i = 1; i + 1 < argc; ++i)
        if (!std::strcmp(argv[i], "--seed")) seed = std::strtoull(argv[i + 1], nullptr, 10);
    auto results = cofil::run_acceptance(seed);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("criterion %2d: %s  %s\n              %s\n", r.id,
                    r.pass ? "PASS" : "FAIL", r.title.c_str(), r.details.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu criteria, %d failing\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}
