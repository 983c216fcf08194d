#include <CLI11.hpp>

#include <iostream>

#include "texseg/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Grayscale decomposition and segmentation pipelines"};

    std::string config_path, input, synthetic, out;
    int seed = -1, threads = -1, iters = -1;

    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--input", input, "input image (PGM P2/P5 or PNG)");
    app.add_option("--synthetic", synthetic,
                   "built-in test image: two-plateau, squares-stripes, star-field, illum-ramp");
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "RNG seed for noise and synthetic inputs");
    app.add_option("--threads", threads, "thread budget (results are thread-count independent)");
    app.add_option("--iters", iters, "iteration override");

    CLI11_PARSE(app, argc, argv);

    try {
        texseg::Config cfg;
        if (!config_path.empty()) cfg = texseg::parse_config_file(config_path);
        // flags override the config file
        if (!input.empty()) cfg.values["input"] = input;
        if (!synthetic.empty()) cfg.values["synthetic"] = synthetic;
        if (!out.empty()) cfg.values["out"] = out;
        if (seed >= 0) cfg.values["seed"] = std::to_string(seed);
        if (threads >= 0) cfg.values["threads"] = std::to_string(threads);
        if (iters >= 0) cfg.values["iters"] = std::to_string(iters);
        return texseg::run_pipeline(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
