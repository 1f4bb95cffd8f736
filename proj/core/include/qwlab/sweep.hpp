#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qwlab/estimates.hpp"

namespace qwlab {

// Parsed from `key = value` lines; '#' comments; lists comma-separated; the token
// `inf` is an extended real. Unknown or duplicate keys are ConfigErrors naming the
// line. Semantic checks (delta range, mass window, lambda vs 2pi/delta) run in
// validate().
struct SweepConfig {
    std::vector<double> delta_ladder{1.0, 0.5, 0.25, 0.125, 0.0625};
    double mass = 1.0;
    std::vector<double> lambda_ladder;          // may be empty: pairs only
    double t_max = 256.0;                       // time window [0, T]
    std::vector<AdmissiblePair> pairs;          // "p:q" tokens
    std::size_t ring_size = 16384;
    std::vector<std::uint64_t> seeds{0};
    StateKind state = StateKind::gaussian;      // continuum profile per delta
    double width = 4.0;
    double carrier = 0.0;
    bool duhamel_weighted = false;

    std::vector<std::string> echo_lines;        // raw config echo for the manifest

    void validate() const; // throws ConfigError listing offending entries
};

SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_text(const std::string& text);

// One fixed continuum profile sampled at each delta of the ladder; per delta,
// homogeneous_ratio for every pair at T = t_max, then dispersive_ratio per
// lambda (those < 2pi/delta). Records are ordered by (delta, pair, lambda, seed)
// regardless of how many workers computed them.
std::vector<RatioRecord> uniformity_sweep(const SweepConfig& cfg, int jobs = 1);

}
