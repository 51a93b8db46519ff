#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "tightpoly/escalation.hpp"
#include "tightpoly/tables.hpp"

namespace tightpoly {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters shared by the command-line subcommands.
struct RunConfig {
    integer m = 0;
    integer n = 1;
    integer bound = default_bound;
    integer max_depth = 0;  // 0: default_max_depth(n)
    std::size_t jobs = 1;
    Format format = Format::markdown;
    std::optional<std::filesystem::path> output;  // chosen format goes here instead of stdout
    std::optional<std::filesystem::path> json_output;
    std::optional<std::filesystem::path> cache_dir;  // unset: no cache
    std::optional<int> table_id;

    integer effective_max_depth() const { return max_depth > 0 ? max_depth : default_max_depth(n); }

    void validate() const {
        if (m < 3) throw ConfigError("--m must be >= 3 (got " + std::to_string(m) + ")");
        if (n < 1) throw ConfigError("--n must be >= 1 (got " + std::to_string(n) + ")");
        if (bound < 2 * n) throw ConfigError("--bound must be >= 2n (got " + std::to_string(bound) + ")");
        if (jobs < 1) throw ConfigError("--jobs must be >= 1");
        if (max_depth < 0) throw ConfigError("--max-depth must be >= 1");
    }
};

}  // namespace tightpoly
