#pragma once

#include <string>
#include <vector>

namespace ppi {

struct ReproCheck {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

// End-to-end replay of one worked example.  example_id is the normalized
// id ("2.7", "3.5", "3.6"); checks carry the expected value in both the
// name and the expected string, so the report reads on its own.
struct ReproResult {
    std::string example_id;
    std::vector<ReproCheck> checks;
    bool all_pass = false;
};

// Accepts a bare id or one prefixed with "example-"/"example "; anything
// else raises UnknownExample.  Replays are deterministic: repeated calls
// produce identical reports, and repro_to_json renders them byte for byte.
ReproResult repro(const std::string& example_id);

std::string repro_to_json(const ReproResult& r);

}  // namespace ppi
