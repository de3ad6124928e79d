#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toroton/config.hpp"
#include "toroton/dispatch.hpp"
#include "toroton/gridio.hpp"
#include "toroton/manifest.hpp"
#include "toroton/svg.hpp"

using namespace toroton;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << bytes;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("toroton_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
    return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) {
        return m.find(needle) != std::string::npos;
    });
}

ScalarField random_field(std::size_t nx, std::size_t ny, std::uint64_t seed) {
    ScalarField f(nx, ny, 0.125, 0.25);
    f.z = 3.5;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& a : f.amp) a = {u(rng), u(rng)};
    return f;
}

}  // namespace

TEST_CASE("empty config text yields the documented defaults") {
    const RunConfig cfg = parse_config("");
    CHECK(cfg.medium.eps_lin == 1.0);
    CHECK(cfg.medium.mu1 == 0.0);
    CHECK(cfg.wave.k0 == 1.0);
    CHECK(cfg.grid.nx == 256);
    CHECK(cfg.grid.absorber);
    CHECK(cfg.run.e0 == 1.5);
    CHECK(cfg.run.perturb_kind == "symmetric-ring");
    CHECK(cfg.run.hole_offset_cores == 5.0);
    CHECK(cfg.run.hole1_offset_cores == 0.0);
    CHECK(cfg.run.hole2_phase == doctest::Approx(M_PI / 2).epsilon(1e-15));
    CHECK(cfg.scan.m_policy == "nearest");
    CHECK(cfg.scan.mu1_values.empty());
}

TEST_CASE("comments, blank lines and whitespace are tolerated") {
    const RunConfig cfg = parse_config(
        "# leading comment\n"
        "\n"
        "[medium]\n"
        "  eps_lin =  2.25  \n"
        "; another comment style\n"
        "[run]\n"
        "e0=0.75\n");
    CHECK(cfg.medium.eps_lin == 2.25);
    CHECK(cfg.run.e0 == 0.75);
}

TEST_CASE("serialize/parse round-trips exactly, including awkward doubles") {
    RunConfig cfg;
    cfg.medium.i_sat = 0.1;  // not exactly representable
    cfg.medium.mu1 = 64.0;
    cfg.run.e0 = 1.0 / 3.0;
    cfg.run.relative_phase = M_PI;
    cfg.run.seed = 123456789;
    cfg.grid.nx = 1024;
    cfg.grid.absorber = false;
    cfg.scan.mu1_values = {0.0, 16.0, 64.0};
    cfg.scan.u_sat_values = {1.5e-3};
    cfg.scan.m_policy = "all-within";

    const std::string doc = serialize_config(cfg);
    const RunConfig back = parse_config(doc);
    CHECK(serialize_config(back) == doc);
    CHECK(back.medium.i_sat == cfg.medium.i_sat);
    CHECK(back.run.e0 == cfg.run.e0);
    CHECK(back.run.relative_phase == cfg.run.relative_phase);
    CHECK(back.scan.mu1_values == cfg.scan.mu1_values);
    CHECK(back.scan.u_sat_values == cfg.scan.u_sat_values);
    CHECK_FALSE(back.grid.absorber);
}

TEST_CASE("parse collects every problem, each tagged with its line") {
    const std::string doc =
        "[medium]\n"         // 1
        "i_sat = banana\n"   // 2
        "[nosuch]\n"         // 3
        "[grid]\n"           // 4
        "nx = 100\n"         // 5: not a power of two (constraint, no line)
        "bogus_key = 1\n"    // 6
        "no_equals_here\n"   // 7
        "[run\n";            // 8: malformed header
    try {
        parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.messages.size() == 6);
        CHECK(any_contains(e.messages, "line 2"));
        CHECK(any_contains(e.messages, "medium.i_sat"));
        CHECK(any_contains(e.messages, "line 3"));
        CHECK(any_contains(e.messages, "unknown section"));
        CHECK(any_contains(e.messages, "line 6"));
        CHECK(any_contains(e.messages, "line 7"));
        CHECK(any_contains(e.messages, "line 8"));
        CHECK(any_contains(e.messages, "powers of two"));
    }
}

TEST_CASE("constraint violations are reported even for well-formed text") {
    try {
        parse_config("[medium]\ni_sat = -1\n[wave]\nk0 = 0\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(any_contains(e.messages, "medium.i_sat must be > 0"));
        CHECK(any_contains(e.messages, "wave.k0 must be > 0"));
    }
}

TEST_CASE("apply_override edits one key and re-validates") {
    RunConfig cfg;
    apply_override(cfg, "run.e0=2.5");
    CHECK(cfg.run.e0 == 2.5);
    apply_override(cfg, "scan.m_policy = all-within");
    CHECK(cfg.scan.m_policy == "all-within");

    CHECK_THROWS_AS(apply_override(cfg, "run.nonexistent=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "no_dot_or_equals"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "wave.k0=-3"), ConfigError);
}

TEST_CASE("grid dump/load round-trips bit for bit") {
    const TempDir dir("grid");
    const ScalarField f = random_field(8, 4, 42);
    dump_grid(f, (dir / "f.bin").string());
    const ScalarField g = load_grid((dir / "f.bin").string());
    CHECK(g.nx == f.nx);
    CHECK(g.ny == f.ny);
    CHECK(g.dx == f.dx);
    CHECK(g.dy == f.dy);
    CHECK(g.z == f.z);
    REQUIRE(g.amp.size() == f.amp.size());
    for (std::size_t i = 0; i < f.amp.size(); ++i) CHECK(g.amp[i] == f.amp[i]);
}

TEST_CASE("truncated grid files report the failing byte offset") {
    const TempDir dir("trunc");
    const ScalarField f = random_field(8, 4, 7);
    dump_grid(f, (dir / "f.bin").string());
    const std::string whole = slurp(dir / "f.bin");

    // cut inside the header: dx is bytes [24, 32)
    spit(dir / "cut.bin", whole.substr(0, 30));
    try {
        load_grid((dir / "cut.bin").string());
        FAIL("expected GridTruncationError");
    } catch (const GridTruncationError& e) {
        CHECK(e.byte_offset == 30);
    }

    // cut inside the payload
    spit(dir / "cut2.bin", whole.substr(0, whole.size() - 5));
    CHECK_THROWS_AS(load_grid((dir / "cut2.bin").string()), GridTruncationError);
}

TEST_CASE("bad magic and absurd dimensions are rejected") {
    const TempDir dir("magic");
    spit(dir / "bad.bin", "NOTAGRID" + std::string(40, '\0'));
    CHECK_THROWS_WITH_AS(load_grid((dir / "bad.bin").string()),
                         doctest::Contains("bad magic"), GridFormatError);

    // header claiming 2^30 x 2^30 samples
    std::string hdr = "SOLGRID1";
    const std::uint64_t huge = std::uint64_t{1} << 30;
    hdr.append(reinterpret_cast<const char*>(&huge), 8);
    hdr.append(reinterpret_cast<const char*>(&huge), 8);
    hdr.append(24, '\0');
    spit(dir / "huge.bin", hdr);
    CHECK_THROWS_WITH_AS(load_grid((dir / "huge.bin").string()),
                         doctest::Contains("dimension overflow"), GridFormatError);

    // zero-size grid
    std::string zhdr = "SOLGRID1";
    zhdr.append(40, '\0');
    spit(dir / "zero.bin", zhdr);
    CHECK_THROWS_AS(load_grid((dir / "zero.bin").string()), GridFormatError);
}

TEST_CASE("series plots are deterministic and empty input is axes-only") {
    const TempDir dir("svg");
    const std::vector<Series> data{{"a", {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}},
                                   {"b", {0.0, 1.0, 2.0}, {1.0, 0.0, 0.25}}};
    render_svg_series(data, "demo", (dir / "p1.svg").string());
    render_svg_series(data, "demo", (dir / "p2.svg").string());
    CHECK(slurp(dir / "p1.svg") == slurp(dir / "p2.svg"));
    CHECK(slurp(dir / "p1.svg").find("<polyline") != std::string::npos);

    render_svg_series({}, "empty", (dir / "empty.svg").string());
    const std::string empty = slurp(dir / "empty.svg");
    CHECK(empty.find("<polyline") == std::string::npos);
    CHECK(empty.find("<line") != std::string::npos);  // the axes survive
}

TEST_CASE("non-finite or ragged series are rejected") {
    const TempDir dir("svgbad");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(
        render_svg_series({{"bad", {0.0, 1.0}, {0.0, nan}}}, "t", (dir / "x.svg").string()),
        std::invalid_argument);
    CHECK_THROWS_AS(
        render_svg_series({{"ragged", {0.0, 1.0}, {0.0}}}, "t", (dir / "y.svg").string()),
        std::invalid_argument);
}

TEST_CASE("heatmap of a mirrored field is the mirrored heatmap") {
    const TempDir dir("heat");
    ScalarField f(16, 16, 1.0, 1.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& a : f.amp) a = {u(rng), 0.0};

    ScalarField m = f;
    for (std::size_t iy = 0; iy < f.ny; ++iy)
        for (std::size_t ix = 0; ix < f.nx; ++ix) m.at(ix, iy) = f.at(f.nx - 1 - ix, iy);
    ScalarField mm = m;
    for (std::size_t iy = 0; iy < f.ny; ++iy)
        for (std::size_t ix = 0; ix < f.nx; ++ix) mm.at(ix, iy) = m.at(m.nx - 1 - ix, iy);

    render_svg_heatmap(f, "t", (dir / "a.svg").string());
    render_svg_heatmap(mm, "t", (dir / "b.svg").string());
    CHECK(slurp(dir / "a.svg") == slurp(dir / "b.svg"));

    ScalarField bad(4, 4, 1.0, 1.0);
    bad.at(1, 1) = {std::numeric_limits<double>::infinity(), 0.0};
    CHECK_THROWS_AS(render_svg_heatmap(bad, "t", (dir / "c.svg").string()),
                    std::invalid_argument);
}

TEST_CASE("sha256 matches the published test vectors") {
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    const TempDir dir("sha");
    spit(dir / "v.txt", "abc");
    CHECK(sha256_file((dir / "v.txt").string()) == sha256_hex("abc"));
}

TEST_CASE("write_manifest emits well-formed json") {
    const TempDir dir("mani");
    RunManifest m;
    m.subcommand = "profile";
    m.config_hash = sha256_hex("cfg");
    m.wall_clock = "2026-01-01T00:00:00Z";
    m.outputs = {{"a.csv", sha256_hex("a")}, {"b.json", sha256_hex("b")}};
    write_manifest(m, dir.path.string());

    const auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(j["subcommand"] == "profile");
    CHECK(j["config_hash"] == sha256_hex("cfg"));
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["outputs"]["a.csv"] == sha256_hex("a"));
    CHECK(j["outputs"]["b.json"] == sha256_hex("b"));
}

TEST_CASE("profile dispatch writes outputs, digests and the manifest last") {
    const TempDir dir("disp");
    RunConfig cfg;
    const RunManifest m = dispatch("profile", cfg, dir.path.string());

    CHECK(fs::exists(dir / "profile.csv"));
    CHECK(fs::exists(dir / "profile.json"));
    CHECK(fs::exists(dir / "manifest.json"));
    CHECK_FALSE(fs::exists(dir / "error_report.json"));
    CHECK(m.subcommand == "profile");
    CHECK(m.config_hash == sha256_hex(serialize_config(cfg)));
    REQUIRE(m.outputs.size() == 2);
    for (const auto& [name, digest] : m.outputs)
        CHECK(digest == sha256_file((dir / name).string()));

    const auto j = nlohmann::json::parse(slurp(dir / "profile.json"));
    CHECK(j["beta"].get<double>() > 0.0);
    CHECK(j["power"].get<double>() > 0.0);
}

TEST_CASE("identical configs give identical manifests modulo the clock") {
    const TempDir da("det_a"), db("det_b");
    RunConfig cfg;
    cfg.run.e0 = 1.2;
    const RunManifest ma = dispatch("profile", cfg, da.path.string());
    const RunManifest mb = dispatch("profile", cfg, db.path.string());
    CHECK(ma.config_hash == mb.config_hash);
    CHECK(ma.outputs == mb.outputs);
}

TEST_CASE("unknown subcommands are a usage error and leave no manifest") {
    const TempDir dir("usage");
    RunConfig cfg;
    CHECK_THROWS_AS(dispatch("frobnicate", cfg, dir.path.string()), UsageError);
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("failed runs leave an error report instead of a manifest") {
    const TempDir dir("fail");
    RunConfig cfg;
    cfg.medium.mu1 = 0.0;  // no curvature fixed point can exist
    cfg.scan.n_c = 8;
    cfg.scan.n_amp = 3;
    cfg.scan.amp_min = 0.05;
    cfg.scan.amp_max = 0.2;
    CHECK_THROWS_AS(dispatch("torus", cfg, dir.path.string()), std::runtime_error);
    CHECK(fs::exists(dir / "error_report.json"));
    CHECK_FALSE(fs::exists(dir / "manifest.json"));
    const auto j = nlohmann::json::parse(slurp(dir / "error_report.json"));
    CHECK(j["subcommand"] == "torus");
    CHECK_FALSE(j["error"].get<std::string>().empty());
}
