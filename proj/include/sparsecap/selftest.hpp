#ifndef SPARSECAP_SELFTEST_HPP
#define SPARSECAP_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sparsecap {

struct SelfTestCheck {
    std::string name;
    bool ok = false;
    std::string detail; // filled on failure
};

struct SelfTestResult {
    std::vector<SelfTestCheck> checks;
    bool all_ok = true;
};

// In-memory invariant suite: Parseval, transform round-trips, coder
// dominance/monotonicity, tiny exhaustive SC1 oracle, SNR micro-oracles.
SelfTestResult run_selftest(std::uint64_t seed);

} // namespace sparsecap

#endif
