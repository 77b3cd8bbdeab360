// Input parsing, deterministic report serialization, certificate files,
// and the command dispatcher behind the CLI.
#ifndef HYPERLOC_IO_HPP
#define HYPERLOC_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hyperloc/stability.hpp"

namespace hyperloc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kInputSchema = "hyperloc-input/1";
inline constexpr const char* kReportSchema = "hyperloc-report/1";
inline constexpr const char* kCertSchema = "hyperloc-cert/1";

struct ProblemInput {
    int n = 0;
    int d = 0;
    IntMat a;
    IntVec delta;
    std::optional<long> p;
    std::optional<std::vector<long>> lambda;
    std::string strategy = "chain";
    long radius = 5;
    long a_max = -1;  // -1: default to s_delta
    long m_shift = 0;
    long q = 2;
    unsigned long long guard = kDefaultGuard;
};

// Throws std::invalid_argument with a diagnostic naming the first violation.
ProblemInput parse_input(const std::string& text);

// Canonical serialization of the mathematical content (used for hashing and
// the round-trip property).
nlohmann::json input_to_json(const ProblemInput& in);

// FNV-1a over the canonical serialization, hex digits.
std::string input_hash(const ProblemInput& in);

nlohmann::json certificate_to_json(const Certificate& cert, const std::string& hash);
Certificate certificate_from_json(const nlohmann::json& j, std::string* hash_out = nullptr);

struct CommandRequest {
    std::string command;
    ProblemInput input;
    std::string format = "text";  // "text" or "json"
    std::optional<std::string> out_path;  // certificate destination
    std::optional<long> p_lo, p_hi;  // scan-primes range
    // verify-cert reads the certificate from this JSON text instead of input.
    std::optional<std::string> cert_text;
};

// Exit codes: 0 success, 2 input error, 3 guard exceeded, 4 internal
// soundness failure, 1 anything else.
int run_command(const CommandRequest& req, std::ostream& os);

}  // namespace hyperloc

#endif
