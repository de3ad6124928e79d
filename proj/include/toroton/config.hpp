#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "toroton/medium.hpp"

namespace toroton {

// Sectioned key = value run configuration. Every field has a default;
// unknown keys are rejected. parse_config collects every error before
// throwing.
struct RunConfig {
    MediumParams medium{/*eps_lin=*/1.0, /*d_eps=*/1.0, /*i_sat=*/1.0,
                        /*mu1=*/0.0, /*u_sat=*/1.0};

    struct Wave {
        double k0 = 1.0;
    } wave;

    struct Grid {
        std::size_t nx = 256;
        std::size_t ny = 256;
        double dx = 0.0;  // 0: derived from the soliton scale
        double dy = 0.0;
        bool absorber = true;
    } grid;

    struct Run {
        double e0 = 1.5;
        double dz = 0.0;      // 0: derived
        double z_end = 0.0;   // 0: derived from diffraction_lengths
        std::size_t trace_every = 10;
        double diffraction_lengths = 20.0;
        double steps_per_length = 200.0;
        std::string perturb_kind = "symmetric-ring";  // | asymmetric-tilt | noise
        double perturb_level = 0.05;
        double separation = 0.0;  // 0: separation_cores * core radius
        double separation_cores = 3.0;
        double relative_phase = 0.0;
        double significance = 5.0;
        std::uint64_t seed = 3;
        bool randomize_second_hole = false;
        bool young_2d = false;
        double slit_width_cores = 4.0;
        double hole1_offset_cores = 0.0;
        double hole_offset_cores = 5.0;
        double hole2_phase = 1.5707963267948966;  // pi/2
    } run;

    struct MaskCfg {
        std::string kind = "none";  // none | single-hole | double-hole | absorber
        double width = 0.0;
        double separation = 0.0;
        double offset = 0.0;
        double z_position = 0.0;
    } mask;

    struct Scan {
        double c_min = 1e-3;
        double c_max = 1e-1;
        std::size_t n_c = 64;
        double amp_min = 0.5;
        double amp_max = 2.5;
        std::size_t n_amp = 5;
        std::vector<double> mu1_values;
        std::vector<double> u_sat_values;
        std::string m_policy = "nearest";  // | all-within
        double m_delta = 0.1;
    } scan;
};

struct ConfigError : std::runtime_error {
    std::vector<std::string> messages;
    explicit ConfigError(std::vector<std::string> msgs);
};

// Parse and fully validate; throws ConfigError carrying every problem.
RunConfig parse_config(const std::string& text);

// Canonical document; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const RunConfig& cfg);

// Apply one "section.key=value" override in place.
void apply_override(RunConfig& cfg, const std::string& assignment);

}  // namespace toroton
