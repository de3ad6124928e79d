#pragma once

#include <string>
#include <vector>

namespace toroton {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

struct RunManifest {
    std::string subcommand;
    std::string config_hash;
    std::string tool_version = kToolVersion;
    std::string wall_clock;  // ISO 8601
    std::vector<std::pair<std::string, std::string>> outputs;  // (file name, digest)
};

// writes manifest.json into out_dir; manifest presence marks a completed run
void write_manifest(const RunManifest& manifest, const std::string& out_dir);

}  // namespace toroton
