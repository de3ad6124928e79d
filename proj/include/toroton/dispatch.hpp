#pragma once

#include <stdexcept>
#include <string>

#include "toroton/config.hpp"
#include "toroton/manifest.hpp"

namespace toroton {

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runs one subcommand pipeline into out_dir. Writes an error_report.json and
// rethrows on computation failure; the manifest is written only on success.
// Subcommands: profile, propagate, stability, pair, young, curvature, torus,
// sweep.
RunManifest dispatch(const std::string& subcommand, const RunConfig& cfg,
                     const std::string& out_dir);

}  // namespace toroton
