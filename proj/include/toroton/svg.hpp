#pragma once

#include <string>
#include <vector>

#include "toroton/bpm.hpp"

namespace toroton {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

// Standalone deterministic SVG line plot; empty input yields an axes-only
// plot. Non-finite data is rejected.
void render_svg_series(const std::vector<Series>& series, const std::string& title,
                       const std::string& path);

// Grayscale |amp|^2 heatmap, downsampled to at most 256x256 cells.
void render_svg_heatmap(const ScalarField& field, const std::string& title,
                        const std::string& path);

}  // namespace toroton
