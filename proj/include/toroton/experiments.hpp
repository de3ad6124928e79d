#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "toroton/bpm.hpp"
#include "toroton/medium.hpp"
#include "toroton/radial.hpp"

namespace toroton {

// Perturbation-stability run on the 2D soliton fixture.
struct StabilityConfig {
    std::size_t nx = 256, ny = 256;
    double dx = 0.0;            // 0: derived from the soliton width
    double e0 = 1.5;
    double diffraction_lengths = 20.0;
    double steps_per_length = 200.0;
    std::uint64_t seed = 0;
};

struct StabilityReport {
    PropagationTrace trace;
    double centroid_drift = 0.0;  // |final - initial| centroid displacement
    double width_drift = 0.0;     // relative width change
    double core_power_fraction = 0.0;
    bool drift_monotone = false;
    std::string verdict;          // "stable" | "curved-intact" | "disrupted"
};

StabilityReport run_stability(PerturbKind kind, double level, const MediumParams& p,
                              const WaveParams& w, const StabilityConfig& cfg = {});

// Coherent filament-pair interaction.
struct PairConfig {
    std::size_t nx = 512, ny = 256;
    double dx = 0.0;              // 0: derived
    double e0 = 1.5;
    double separation_cores = 3.0;  // in units of the core radius
    double diffraction_lengths = 30.0;
    double steps_per_length = 200.0;
};

struct PairReport {
    std::vector<double> z;
    std::vector<double> separation;
    double com_drift = 0.0;
    bool merged = false;
    std::string verdict;  // "attract" | "repel" | "neutral"
};

PairReport run_pair(double separation, double relative_phase, const MediumParams& p,
                    const WaveParams& w, const PairConfig& cfg = {});
// separation given in core radii when taken from cfg.separation_cores; this
// overload takes it in absolute length units (<= 0 selects the config value)

// Young two-hole self-interference. Default mode is (1+1)D slab with slit
// masks; twod switches to circular holes on a 2D grid.
struct YoungConfig {
    std::size_t nx = 4096;
    double dx = 0.0;            // 0: derived from the slab soliton width
    double e0 = 1.2;
    double slit_width_cores = 4.0;   // slit width in core radii (1/kappa)
    double hole1_offset_cores = 0.0; // hole-1 center; 0 keeps it on the filament
    double hole_offset_cores = 5.0;  // slit-2 center distance in core radii
    double diffraction_lengths = 25.0;  // post-screen run, in slit diffraction lengths
    double steps_per_length = 100.0;
    double significance = 5.0;
    // uniform phase plate over the second hole; the quadrature default
    // maximizes the coherent steering of the filament
    double hole2_phase = M_PI / 2.0;
    bool randomize_second_hole = false;
    std::uint64_t seed = 3;
    bool twod = false;
    std::size_t ny2d = 256;
};

struct DeflectionReport {
    std::vector<double> z;
    std::vector<double> control_x;  // core-window centroid, single hole
    std::vector<double> test_x;     // core-window centroid, double hole
    double deflection_control = 0.0;
    double deflection_test = 0.0;
    int fringe_gradient_sign = 0;   // from the linear Fresnel two-source model
    std::string verdict;            // "consistent" | "null-effect" | "inconsistent"
};

DeflectionReport run_young(const MediumParams& p, const WaveParams& w,
                           const YoungConfig& cfg = {});

}  // namespace toroton
