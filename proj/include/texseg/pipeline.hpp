#pragma once

#include <map>
#include <string>

#include "texseg/image.hpp"

namespace texseg {

// Flat key=value configuration ('#' starts a comment line).  Unknown keys
// are rejected with the list of valid ones.
struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
};

Config parse_config_text(const std::string& text);
Config parse_config_file(const std::string& path);

// Runs the configured pipeline end to end and writes all artifacts plus
// manifest.txt and convergence.log into the output directory.  Returns 0
// on success.  Deterministic for a fixed config + seed.
int run_pipeline(const Config& config);

}  // namespace texseg
