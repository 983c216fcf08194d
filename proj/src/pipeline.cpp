#include "texseg/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "texseg/bilevel.hpp"
#include "texseg/imageio.hpp"
#include "texseg/metrics.hpp"
#include "texseg/multiphase.hpp"
#include "texseg/synthetic.hpp"
#include "texseg/threepart.hpp"
#include "texseg/twophase.hpp"

namespace fs = std::filesystem;

namespace texseg {

namespace {

const char* const kValidKeys[] = {
    "pipeline", "input",  "synthetic", "out",     "seed",    "noise_sigma",
    "size",     "raw",    "threshold", "threads", "iters",   "L",
    "S",        "M",      "N",         "nu",      "xi",      "tau",
    "alpha",    "beta",   "mu1",       "mu2",     "mu3",     "mu4",
    "c_mu1",    "c_mu2",  "c_beta1",   "c_beta2", "theta",   "beta4",
    "beta5",    "gamma",  "T1",        "T2",      "scale",
};

std::string valid_key_list() {
    std::string s;
    for (const char* k : kValidKeys) {
        if (!s.empty()) s += ", ";
        s += k;
    }
    return s;
}

bool is_valid_key(const std::string& key) {
    for (const char* k : kValidKeys)
        if (key == k) return true;
    return false;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Tracks files written so a failure can remove partial output.
struct ArtifactWriter {
    std::vector<std::string> written;

    void image(const Image& x, const std::string& path) {
        save_pgm(x, path);
        written.push_back(path);
    }
    void raw(const Image& x, const std::string& path) {
        save_raw(x, path);
        written.push_back(path);
    }
    void text(const std::string& content, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error(path + ": cannot open for writing");
        out << content;
        if (!out) throw std::runtime_error(path + ": write failed");
        written.push_back(path);
    }
    void cleanup() {
        for (const std::string& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

Image offset_view(const Image& x) {
    Image out = x;
    for (double& v : out.data) v += 0.5;
    return out;
}

Image nonzero_mask(const Image& x) {
    Image out(x.rows, x.cols);
    for (size_t k = 0; k < x.size(); ++k) out.data[k] = x.data[k] != 0.0 ? 1.0 : 0.0;
    return out;
}

PhaseSet argmax_partition(const PhaseSet& p) {
    PhaseSet out(p.size(), Image(p[0].rows, p[0].cols));
    for (size_t k = 0; k < p[0].size(); ++k) {
        size_t best = 0;
        for (size_t n = 1; n < p.size(); ++n)
            if (p[n].data[k] > p[best].data[k]) best = n;
        out[best].data[k] = 1.0;
    }
    return out;
}

Image make_input(const Config& cfg, int& rows, int& cols, uint64_t seed) {
    Image f;
    if (cfg.has("input")) {
        f = load_image(cfg.get("input"));
    } else if (cfg.has("synthetic")) {
        const std::string name = cfg.get("synthetic");
        const std::string size = cfg.get("size", "64x64");
        const size_t x = size.find('x');
        if (x == std::string::npos)
            throw std::runtime_error("config: size must look like 64x64");
        rows = std::stoi(size.substr(0, x));
        cols = std::stoi(size.substr(x + 1));
        if (name == "two-plateau")
            f = synth_two_plateau(rows, cols);
        else if (name == "squares-stripes")
            f = synth_squares_stripes(rows, cols);
        else if (name == "star-field")
            f = synth_star_field(rows, cols, seed);
        else if (name == "illum-ramp")
            f = synth_illum_ramp(rows, cols);
        else
            throw std::runtime_error(
                "config: unknown synthetic '" + name +
                "' (two-plateau, squares-stripes, star-field, illum-ramp)");
    } else {
        throw std::runtime_error("config: need either input= or synthetic=");
    }
    rows = f.rows;
    cols = f.cols;
    const double sigma = cfg.get_double("noise_sigma", 0.0);
    if (sigma > 0) f = add_gaussian_noise(f, sigma, seed);
    return f;
}

}  // namespace

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : std::stod(it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : std::stoi(it->second);
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!is_valid_key(key))
            throw std::runtime_error("config: unknown key '" + key +
                                     "'; valid keys: " + valid_key_list());
        cfg.values[key] = value;
    }
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open config");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

int run_pipeline(const Config& cfg) {
    const std::string pipeline = cfg.get("pipeline");
    if (pipeline.empty()) throw std::runtime_error("config: missing required key 'pipeline'");
    const std::string outdir = cfg.get("out");
    if (outdir.empty()) throw std::runtime_error("config: missing required key 'out'");
    const int threads = cfg.get_int("threads", 1);
    if (threads < 1) throw std::runtime_error("config: threads must be >= 1");

    if (!fs::exists(outdir)) {
        const fs::path parent = fs::path(outdir).parent_path();
        if (!parent.empty() && !fs::exists(parent))
            throw std::runtime_error(outdir + ": parent directory does not exist");
        fs::create_directory(outdir);
    }

    const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
    int rows = 0, cols = 0;
    Image f = make_input(cfg, rows, cols, seed);
    const bool dump_raw = cfg.get_int("raw", 0) != 0;
    const double threshold = cfg.get_double("threshold", 0.5);
    // working intensity scale: solvers see scale*f (the region-labeling
    // subproblems are calibrated for 8-bit magnitudes, so scale=255 matches
    // that regime); all emitted components and means are normalized back
    const double scale = cfg.get_double("scale", 1.0);
    if (scale <= 0) throw std::runtime_error("config: scale must be > 0");
    const Image fw = scale == 1.0 ? f : scale * f;
    auto descale = [&](Image& x) {
        if (scale != 1.0)
            for (double& v : x.data) v /= scale;
    };
    auto path = [&](const std::string& name) { return outdir + "/" + name; };

    ArtifactWriter w;
    try {
        std::ostringstream manifest;
        manifest << "pipeline: " << pipeline << "\n";
        manifest << "rows: " << rows << "\n";
        manifest << "cols: " << cols << "\n";
        manifest << "seed: " << seed << "\n";
        manifest << "noise_sigma: " << fmt(cfg.get_double("noise_sigma", 0.0)) << "\n";
        manifest << "scale: " << fmt(scale) << "\n";
        std::vector<double> trace;

        w.image(f, path("f.pgm"));
        if (dump_raw) w.raw(f, path("f.raw"));

        if (pipeline == "twophase") {
            TwoPhaseParams p;
            p.L = cfg.get_int("L", p.L);
            p.S = cfg.get_int("S", p.S);
            p.theta = cfg.get_double("theta", p.theta);
            p.beta4 = cfg.get_double("beta4", p.beta4);
            p.c_beta1 = cfg.get_double("c_beta1", p.c_beta1);
            p.c_beta2 = cfg.get_double("c_beta2", p.c_beta2);
            p.c_mu1 = cfg.get_double("c_mu1", p.c_mu1);
            p.c_mu2 = cfg.get_double("c_mu2", p.c_mu2);
            p.mu1 = cfg.get_double("mu1", p.mu1);
            p.mu2 = cfg.get_double("mu2", p.mu2);
            p.nu = cfg.get_double("nu", p.nu) * scale;
            p.iters = cfg.get_int("iters", p.iters);
            TwoPhaseState st = twophase_segment(fw, p);
            trace = st.err_p;
            descale(st.v);
            descale(st.eps);
            st.c1 /= scale;
            st.c2 /= scale;

            Image p_bin = twophase_binarize(st, threshold);
            Image f_seg(rows, cols);
            for (size_t k = 0; k < f.size(); ++k)
                f_seg.data[k] = st.c1 * st.p.data[k] + st.c2 * (1.0 - st.p.data[k]);
            Image one_minus(rows, cols);
            for (size_t k = 0; k < f.size(); ++k) one_minus.data[k] = 1.0 - p_bin.data[k];
            PhaseSet hard{p_bin, one_minus};

            w.image(st.p, path("p.pgm"));
            w.image(p_bin, path("p_bin.pgm"));
            w.image(offset_view(st.v), path("v.pgm"));
            w.image(nonzero_mask(st.v), path("v_bin.pgm"));
            w.image(offset_view(st.eps), path("eps.pgm"));
            w.image(f_seg, path("f_seg.pgm"));
            w.image(extract_contours(hard), path("contours.pgm"));
            if (dump_raw) {
                w.raw(st.p, path("p.raw"));
                w.raw(st.v, path("v.raw"));
                w.raw(st.eps, path("eps.raw"));
            }

            Image recon = f_seg + st.v + st.eps;
            manifest << "iters: " << p.iters << "\n";
            manifest << "c1: " << fmt(st.c1) << "\n";
            manifest << "c2: " << fmt(st.c2) << "\n";
            manifest << "c1_255: " << fmt(st.c1 * 255.0) << "\n";
            manifest << "c2_255: " << fmt(st.c2 * 255.0) << "\n";
            manifest << "mse_reconstruction: " << fmt(mse(f, recon)) << "\n";
            manifest << "sparsity_v_pct: " << fmt(sparsity_pct(st.v)) << "\n";
            manifest << "hist_mass_band05: "
                     << fmt(phase_histogram_mass(st.p, 0.05)) << "\n";
        } else if (pipeline == "multiphase") {
            MultiphaseParams p;
            p.L = cfg.get_int("L", p.L);
            p.S = cfg.get_int("S", p.S);
            p.M = cfg.get_int("M", p.M);
            p.N = cfg.get_int("N", p.N);
            p.mu1 = cfg.get_double("mu1", p.mu1);
            p.mu3 = cfg.get_double("mu3", p.mu3);
            p.mu4 = cfg.get_double("mu4", p.mu4);
            p.c_mu2 = cfg.get_double("c_mu2", p.c_mu2);
            p.nu = cfg.get_double("nu", p.nu) * scale;
            p.xi = cfg.get_double("xi", p.xi);
            p.alpha = cfg.get_double("alpha", p.alpha);
            p.beta = cfg.get_double("beta", p.beta);
            p.tau = cfg.get_double("tau", p.tau);
            p.iters = cfg.get_int("iters", p.iters);
            MultiphaseState st = multiphase_segment(fw, p);
            trace = st.err_u;
            descale(st.u);
            descale(st.v);
            descale(st.eps);
            for (double& cn : st.c) cn /= scale;

            Image b = bias_field(st);
            PhaseSet hard = argmax_partition(st.p);
            Image f_seg(rows, cols);
            for (size_t k = 0; k < f.size(); ++k) {
                double pc = 0;
                for (int n = 0; n < p.N; ++n) pc += st.c[n] * st.p[n].data[k];
                f_seg.data[k] = pc;
            }

            w.image(st.u, path("u.pgm"));
            w.image(offset_view(st.v), path("v.pgm"));
            w.image(nonzero_mask(st.v), path("v_bin.pgm"));
            w.image(offset_view(st.eps), path("eps.pgm"));
            w.image(offset_view(b), path("b.pgm"));
            for (int n = 0; n < p.N; ++n)
                w.image(st.p[n], path("p_" + std::to_string(n) + ".pgm"));
            w.image(f_seg, path("f_seg.pgm"));
            w.image(extract_contours(hard), path("contours.pgm"));
            if (dump_raw) {
                w.raw(st.u, path("u.raw"));
                w.raw(st.v, path("v.raw"));
                w.raw(st.eps, path("eps.raw"));
            }

            Image recon = reconstruct(st);
            manifest << "iters: " << p.iters << "\n";
            for (int n = 0; n < p.N; ++n)
                manifest << "c_" << n << ": " << fmt(st.c[n]) << "\n";
            for (int n = 0; n < p.N; ++n)
                manifest << "c_" << n << "_255: " << fmt(st.c[n] * 255.0) << "\n";
            manifest << "mse_reconstruction: " << fmt(mse(f, recon)) << "\n";
            const double fn = norm2(f);
            manifest << "residual_rel: "
                     << fmt(fn > 0 ? norm2(f - recon) / fn : 0.0) << "\n";
            manifest << "sparsity_v_pct: " << fmt(sparsity_pct(st.v)) << "\n";
        } else if (pipeline == "bilevel" || pipeline == "decompose") {
            ThreePartParams dp;
            dp.L = cfg.get_int("L", dp.L);
            dp.S = cfg.get_int("S", dp.S);
            dp.c_mu1 = cfg.get_double("c_mu1", dp.c_mu1);
            dp.c_mu2 = cfg.get_double("c_mu2", dp.c_mu2);
            dp.c_beta1 = cfg.get_double("c_beta1", dp.c_beta1);
            dp.c_beta2 = cfg.get_double("c_beta2", dp.c_beta2);
            dp.theta = cfg.get_double("theta", dp.theta);
            dp.beta4 = cfg.get_double("beta4", dp.beta4);
            dp.nu = cfg.get_double("nu", dp.nu) * scale;
            dp.gamma = cfg.get_double("gamma", dp.gamma);

            BilevelParams bp;
            bp.decomp = dp;
            bp.M = cfg.get_int("M", bp.M);
            bp.N = cfg.get_int("N", bp.N);
            bp.xi = cfg.get_double("xi", bp.xi);
            bp.mu3 = cfg.get_double("mu3", bp.mu3);
            bp.tau = cfg.get_double("tau", bp.tau);
            bp.T1 = cfg.get_int("T1", bp.T1);
            bp.T2 = cfg.get_int("T2", cfg.get_int("iters", bp.T2));
            bp.beta5 = cfg.get_double("beta5", bp.beta5);
            bp.segmentation = pipeline == "bilevel";
            if (pipeline == "decompose") bp.T1 = 1;

            BilevelState st = bilevel_segment(fw, bp);
            trace = st.dec.err_u;
            descale(st.dec.u);
            descale(st.dec.v);
            descale(st.dec.eps);
            for (double& cn : st.c) cn /= scale;

            w.image(st.dec.u, path("u.pgm"));
            w.image(offset_view(st.dec.v), path("v.pgm"));
            w.image(nonzero_mask(st.dec.v), path("v_bin.pgm"));
            w.image(offset_view(st.dec.eps), path("eps.pgm"));
            if (dump_raw) {
                w.raw(st.dec.u, path("u.raw"));
                w.raw(st.dec.v, path("v.raw"));
                w.raw(st.dec.eps, path("eps.raw"));
            }

            manifest << "T1: " << bp.T1 << "\n";
            manifest << "T2: " << bp.T2 << "\n";
            Image recon = st.dec.u + st.dec.v + st.dec.eps;
            manifest << "mse_reconstruction: " << fmt(mse(f, recon)) << "\n";
            const double fn = norm2(f);
            manifest << "residual_rel: "
                     << fmt(fn > 0 ? norm2(f - recon) / fn : 0.0) << "\n";
            manifest << "sparsity_v_pct: " << fmt(sparsity_pct(st.dec.v)) << "\n";

            if (bp.segmentation) {
                PhaseSet hard = bilevel_binarize(st.dec.u, st.c, st.q, bp.beta5);
                Image b = bilevel_bias(st);
                Image f_seg(rows, cols);
                for (size_t k = 0; k < f.size(); ++k) {
                    double pc = 0;
                    for (int n = 0; n < bp.N; ++n) pc += st.c[n] * hard[n].data[k];
                    f_seg.data[k] = pc;
                }
                w.image(offset_view(b), path("b.pgm"));
                for (int n = 0; n < bp.N; ++n)
                    w.image(hard[n], path("p_" + std::to_string(n) + ".pgm"));
                w.image(f_seg, path("f_seg.pgm"));
                w.image(extract_contours(hard), path("contours.pgm"));
                for (int n = 0; n < bp.N; ++n)
                    manifest << "c_" << n << ": " << fmt(st.c[n]) << "\n";
                for (int n = 0; n < bp.N; ++n)
                    manifest << "c_" << n << "_255: " << fmt(st.c[n] * 255.0) << "\n";
            }
        } else {
            throw std::runtime_error(
                "config: unknown pipeline '" + pipeline +
                "' (twophase, multiphase, bilevel, decompose)");
        }

        if (!trace.empty())
            manifest << "err_final: " << fmt(trace.back()) << "\n";
        std::ostringstream log;
        for (size_t t = 0; t < trace.size(); ++t)
            log << t + 1 << " " << fmt(trace[t]) << "\n";
        w.text(log.str(), path("convergence.log"));
        w.text(manifest.str(), path("manifest.txt"));
    } catch (...) {
        w.cleanup();
        throw;
    }
    return 0;
}

}  // namespace texseg
