#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_util.hpp"
#include "texseg/imageio.hpp"
#include "texseg/pipeline.hpp"
#include "texseg/synthetic.hpp"

using namespace texseg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path d = fs::temp_directory_path() / "texseg_test_scratch";
    fs::create_directories(d);
    return d;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("P2 identity matrix loads to exact values") {
    fs::path p = scratch_dir() / "id.pgm";
    write_file(p, "P2\n# comment line\n2 2\n255\n255 0 0 255\n");
    Image img = load_pgm(p.string());
    REQUIRE(img.rows == 2);
    REQUIRE(img.cols == 2);
    CHECK(img(0, 0) == 1.0);
    CHECK(img(0, 1) == 0.0);
    CHECK(img(1, 0) == 0.0);
    CHECK(img(1, 1) == 1.0);
}

TEST_CASE("P5 and P2 encodings of the same data agree") {
    fs::path a = scratch_dir() / "a.pgm";
    fs::path b = scratch_dir() / "b.pgm";
    write_file(a, "P2\n3 2\n255\n10 20 30 40 50 60\n");
    std::string bin = "P5\n3 2\n255\n";
    for (unsigned char v : {10, 20, 30, 40, 50, 60}) bin.push_back(static_cast<char>(v));
    write_file(b, bin);
    Image ia = load_pgm(a.string());
    Image ib = load_pgm(b.string());
    for (size_t k = 0; k < ia.size(); ++k) CHECK(ia.data[k] == ib.data[k]);
}

TEST_CASE("truncated binary payload reports the byte offset") {
    fs::path p = scratch_dir() / "trunc.pgm";
    std::string bin = "P5\n4 4\n255\n";
    bin += "\x01\x02\x03";  // 3 of 16 samples
    write_file(p, bin);
    try {
        load_pgm(p.string());
        FAIL("expected a truncation error");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("byte offset") != std::string::npos);
    }
}

TEST_CASE("magic dispatch rejects unknown formats") {
    fs::path p = scratch_dir() / "garbage.bin";
    write_file(p, "not an image at all");
    CHECK_THROWS(load_image(p.string()));
    CHECK_THROWS(load_image((scratch_dir() / "missing.pgm").string()));
}

TEST_CASE("save/load round trip stays within quantization error") {
    std::mt19937_64 rng(91);
    Image x = testutil::random_image(7, 9, rng, 0, 1);
    fs::path p = scratch_dir() / "rt.pgm";
    save_pgm(x, p.string());
    Image y = load_image(p.string());
    for (size_t k = 0; k < x.size(); ++k)
        CHECK(std::abs(x.data[k] - y.data[k]) <= 0.5 / 255.0 + 1e-12);
}

TEST_CASE("raw dump preserves doubles bit for bit") {
    std::mt19937_64 rng(92);
    Image x = testutil::random_image(4, 5, rng);
    fs::path p = scratch_dir() / "x.raw";
    save_raw(x, p.string());
    std::string bytes = read_file(p);
    REQUIRE(bytes.size() == x.size() * sizeof(double));
    const double* vals = reinterpret_cast<const double*>(bytes.data());
    for (size_t k = 0; k < x.size(); ++k) CHECK(vals[k] == x.data[k]);
}

TEST_CASE("config parsing: values, comments, and unknown keys") {
    Config cfg = parse_config_text(
        "pipeline = twophase\n"
        "# full-line comment\n"
        "iters = 25   # trailing comment\n"
        "nu=0.05\n"
        "\n");
    CHECK(cfg.get("pipeline") == "twophase");
    CHECK(cfg.get_int("iters", 0) == 25);
    CHECK(cfg.get_double("nu", 0) == doctest::Approx(0.05));
    CHECK(cfg.get_int("seed", 42) == 42);  // fallback

    CHECK_THROWS(parse_config_text("pipeline twophase\n"));
    try {
        parse_config_text("plieline = twophase\n");
        FAIL("expected unknown-key error");
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        CHECK(msg.find("plieline") != std::string::npos);
        CHECK(msg.find("pipeline") != std::string::npos);  // lists valid keys
    }
}

TEST_CASE("seeded noise is reproducible and seed-sensitive") {
    Image clean = synth_two_plateau(8, 8);
    Image a = add_gaussian_noise(clean, 0.1, 42);
    Image b = add_gaussian_noise(clean, 0.1, 42);
    Image c = add_gaussian_noise(clean, 0.1, 43);
    double diff = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a.data[k] == b.data[k]);
        diff += std::abs(a.data[k] - c.data[k]);
    }
    CHECK(diff > 0.0);
}

TEST_CASE("pipeline writes its artifacts and is byte-deterministic") {
    fs::path out1 = scratch_dir() / "run1";
    fs::path out2 = scratch_dir() / "run2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    Config cfg = parse_config_text(
        "pipeline = twophase\n"
        "synthetic = two-plateau\n"
        "size = 16x16\n"
        "noise_sigma = 0.05\n"
        "seed = 7\n"
        "iters = 8\n");
    cfg.values["out"] = out1.string();
    CHECK(run_pipeline(cfg) == 0);
    cfg.values["out"] = out2.string();
    CHECK(run_pipeline(cfg) == 0);

    for (const char* name : {"f.pgm", "p.pgm", "p_bin.pgm", "v.pgm", "v_bin.pgm",
                             "eps.pgm", "f_seg.pgm", "contours.pgm",
                             "manifest.txt", "convergence.log"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(out1 / name));
        CHECK(read_file(out1 / name) == read_file(out2 / name));
    }
    const std::string manifest = read_file(out1 / "manifest.txt");
    CHECK(manifest.find("pipeline: twophase") != std::string::npos);
    CHECK(manifest.find("c1: ") != std::string::npos);
    CHECK(manifest.find("mse_reconstruction: ") != std::string::npos);
}

TEST_CASE("pipeline error handling") {
    Config cfg = parse_config_text("pipeline = twophase\nsynthetic = two-plateau\n");
    cfg.values["out"] = "/nonexistent_root_dir_texseg/deep/out";
    CHECK_THROWS(run_pipeline(cfg));

    Config noout = parse_config_text("pipeline = twophase\nsynthetic = two-plateau\n");
    CHECK_THROWS(run_pipeline(noout));

    Config badpipe = parse_config_text("pipeline = nope\nsynthetic = two-plateau\n");
    badpipe.values["out"] = (scratch_dir() / "badpipe").string();
    CHECK_THROWS(run_pipeline(badpipe));
}

TEST_CASE("decompose pipeline emits the decomposition artifacts only") {
    fs::path out = scratch_dir() / "dec";
    fs::remove_all(out);
    Config cfg = parse_config_text(
        "pipeline = decompose\n"
        "synthetic = squares-stripes\n"
        "size = 16x16\n"
        "iters = 5\n"
        "raw = 1\n");
    cfg.values["out"] = out.string();
    CHECK(run_pipeline(cfg) == 0);
    for (const char* name : {"f.pgm", "u.pgm", "v.pgm", "v_bin.pgm", "eps.pgm",
                             "u.raw", "v.raw", "eps.raw", "manifest.txt"}) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
    }
    CHECK_FALSE(fs::exists(out / "contours.pgm"));
    const std::string manifest = read_file(out / "manifest.txt");
    CHECK(manifest.find("T1: 1") != std::string::npos);
}
