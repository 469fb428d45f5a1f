#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ghcwave {

// Flat, validated key-value view of a run configuration.  Keys are dotted
// ("equation.alpha"); top-level keys are bare ("command", "out_dir", "seed").
// Unknown keys are errors.
struct RunConfig {
    std::map<std::string, std::string> kv;

    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& dflt) const;
    double num(const std::string& key) const;
    double num_or(const std::string& key, double dflt) const;
    long integer_or(const std::string& key, long dflt) const;
    bool has(const std::string& key) const;
};

// Parse `key = value` lines with [section] headers; '#' starts a comment.
// Throws ValidationError with a line number on malformed input or unknown
// keys, and checks cross-key invariants before any compute starts.
RunConfig parse_config(const std::string& text);

// Apply --key value pairs on top of file values (flags win), then revalidate.
void apply_overrides(RunConfig& cfg,
                     const std::vector<std::pair<std::string, std::string>>& kv);

// Execute the configured command; writes artifacts under out_dir and a
// summary.json.  Returns the process exit status: 0 success, 2 validation
// error, 3 numerical failure.
int run(const RunConfig& cfg);

// argv front door used by the binary: ghcwave <command> [--config FILE]
// [--key value]...
int main_entry(int argc, const char* const* argv);

}  // namespace ghcwave
