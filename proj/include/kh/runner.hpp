#ifndef KH_RUNNER_HPP
#define KH_RUNNER_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kh/theory.hpp"

namespace kh {

/// Batch configuration; mirrors the CLI flags. Unsupported combinations are
/// config errors (exit 2); per-diagram computation failures are recorded and
/// surface as exit 1.
struct RunConfig {
    std::vector<std::string> inputs;
    TheorySpec spec;
    std::vector<std::string> commands;  // bracket homology spectral verify-moves report
    std::string out_dir = "khg-out";
    int limit = 20;
    uint64_t seed = 1;
    bool normalize_bracket = false;  // report the loop-normalized two-variable bracket
    bool filter_by_gr = true;        // spectral filtration source
    int filter_source = -1;

    void validate() const;  // throws ValidationError on config problems
};

/// Executes every (input, command) pair, writing one versioned record file
/// per result into out_dir. Deterministic for a fixed config and seed.
int run(const RunConfig& cfg, std::ostream& log);

} // namespace kh

#endif
