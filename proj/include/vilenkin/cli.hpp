#pragma once

// Command-line front end: run configuration, identity checks and the
// verification sweep with CSV / JSON output.

#include "vilenkin/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vilenkin::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

inline constexpr double kIdentityTolerance = 1e-10;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string m = "2,3,2,3";
    // Truncation level; defaults to the length of m and must not exceed it.
    std::optional<int> level;
    std::vector<double> alphas{0.1, 0.5, 0.9};
    std::vector<double> exponents{1.0, 2.0, kInfinity};
    std::vector<Claim> claims{default_claims().begin(), default_claims().end()};
    // Empty selects default_corpus().
    std::vector<FunctionFamily> families;
    // Level filter for theorem1 / lemma4; empty selects every admissible k.
    std::vector<std::size_t> ks;
    // Index filter for theorem2 / lemma1 / lemma5 / eq23; empty selects all.
    std::vector<std::size_t> ns;
    // Seeds of the random-sign coefficient vectors fed to lemma1.
    std::vector<std::uint64_t> coefficient_seeds{1, 2, 3};
    // Lemma 4 evaluates p = M_k, ..., M_k + lemma4_span.
    std::size_t lemma4_span = 30;
    std::string out;
    std::string summary;
    std::string cap_file;
    unsigned jobs = 1;

    // The truncated group; throws ConfigError.
    GroupContext context() const;
    // Throws ConfigError naming the offending field.
    void validate() const;
};

// JSON document -> config. `source` names the document in error messages.
RunConfig config_from_json(const nlohmann::json& doc, const std::string& source = "config");
RunConfig load_config(const std::string& path);

struct IdentityCheck {
    std::string name;
    std::string parameters;
    double residual = 0.0;
    double tolerance = kIdentityTolerance;
    bool relative = false;

    bool passed() const noexcept { return residual <= tolerance; }
};

// Block formula for D_{M_k}, Cesaro recurrences, Lemma 2 and Paley
// identities, orthonormality and transform roundtrip on the configured group.
std::vector<IdentityCheck> run_identity_checks(const RunConfig& config);

// Every report row of the configured sweep, in canonical order.
std::vector<RatioReport> run_reports(const RunConfig& config);

void write_csv(std::ostream& os, const std::vector<RatioReport>& rows);
std::string to_csv(const std::vector<RatioReport>& rows);

// {claim: {alpha: max_ratio}} plus a "group" section; dyadic groups also get
// a "dyadic" section with the theorem maxima under go2 / go3.
nlohmann::json summarize(const std::vector<RatioReport>& rows, const GroupContext& ctx);

// Caps as {claim: cap} or {claim: {alpha: cap}}; returns the rows above cap.
std::vector<RatioReport> cap_violations(const std::vector<RatioReport>& rows, const nlohmann::json& caps);

// Shortest round-trip decimal form ("0.5", "0.1").
std::string format_short(double value);
// 17 significant digits, "inf"/"nan" spelled out.
std::string format_full(double value);

int cmd_check_identities(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

// argv front end; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace vilenkin::cli
