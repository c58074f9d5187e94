// Aggregated outcome of a randomized verification suite.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace qdp {

struct VerificationReport {
    std::string check_name;
    std::size_t trials = 0;
    std::size_t violations = 0;
    // Largest violation magnitude observed (|most negative slack|), 0 when
    // every slack was nonnegative.
    double max_violation = 0.0;
    std::uint64_t seed = 0;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    bool pass = true;  // <=> violations == 0
    std::optional<nlohmann::ordered_json> worst_witness;
};

}  // namespace qdp
