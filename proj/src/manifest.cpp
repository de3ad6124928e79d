#include "toroton/manifest.hpp"

#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>
#include <sstream>
#include <stdexcept>

namespace toroton {

namespace {

std::string digest_to_hex(const unsigned char* md, unsigned len) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256: digest failed");
    return digest_to_hex(md, len);
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
    nlohmann::json j;
    j["subcommand"] = manifest.subcommand;
    j["config_hash"] = manifest.config_hash;
    j["tool_version"] = manifest.tool_version;
    j["wall_clock"] = manifest.wall_clock;
    nlohmann::json files = nlohmann::json::object();
    for (const auto& [name, digest] : manifest.outputs) files[name] = digest;
    j["outputs"] = files;

    std::ofstream out(out_dir + "/manifest.json", std::ios::trunc);
    if (!out) throw std::runtime_error("write_manifest: cannot open manifest.json");
    out << j.dump(2) << "\n";
}

}  // namespace toroton
