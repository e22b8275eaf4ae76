#include "qbf/app.hpp"
#include "qbf/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

const std::map<std::string, qbf::NormVariant> kVariantNames{
    {"qdfn", qbf::NormVariant::qdfn},
    {"qdnn", qbf::NormVariant::qdnn},
    {"qfnn", qbf::NormVariant::qfnn},
};

struct SolverFlags {
    qbf::SolverOverrides o;
    std::uint64_t seed = 1;

    void attach(CLI::App* app) {
        app->add_option("--seed", seed, "Seed for the mask and the factor initialization");
        app->add_option("--d0", o.d0, "Initial rank estimate (default 40)")->check(CLI::PositiveNumber);
        app->add_option("--lambda", o.lambda, "Regularization weight (default 0.05*sqrt(max(M,N)))")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--mu0", o.mu0, "Initial penalty (default 1e-3, 1e-2 for qdnn)")
            ->check(CLI::PositiveNumber);
        app->add_option("--beta", o.beta, "Penalty growth factor (default 1.03)");
        app->add_option("--tol", o.tol, "Relative-error stopping tolerance (default 1e-4)")
            ->check(CLI::PositiveNumber);
        app->add_option("--max-iters", o.max_iters, "Iteration cap (default 500)")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--rank-threshold", o.rank_drop_threshold,
                        "Rank-drop ratio that triggers the one-time rank cut (default 20; inf disables)");
    }
};

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

int print_error(const std::exception& e) {
    std::cerr << "qbf: " << e.what() << '\n';
    if (const auto* d = dynamic_cast<const qbf::DivergedError*>(&e)) {
        std::cerr << "qbf: diverged at iteration " << d->iteration() << '\n';
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quaternion low-rank matrix completion"};
    app.require_subcommand(1);

    // inpaint
    auto* inpaint = app.add_subcommand("inpaint", "Mask a color PNG at random and complete it");
    std::string in_image;
    std::string in_manifest;
    std::string in_out = "out";
    std::string in_variant = "qfnn";
    double in_mr = 0.5;
    SolverFlags in_flags;
    auto* in_image_opt = inpaint->add_option("--image", in_image, "Input PNG")->check(CLI::ExistingFile);
    auto* in_manifest_opt =
        inpaint->add_option("--manifest", in_manifest, "Re-run a saved manifest.txt")->check(CLI::ExistingFile);
    in_image_opt->excludes(in_manifest_opt);
    inpaint->add_option("--variant", in_variant, "qdfn, qdnn or qfnn")
        ->transform(CLI::IsMember({"qdfn", "qdnn", "qfnn"}, CLI::ignore_case));
    inpaint->add_option("--mr", in_mr, "Missing ratio")->check(CLI::Range(0.0, 1.0));
    inpaint->add_option("--out", in_out, "Output directory");
    in_flags.attach(inpaint);

    // synth
    auto* synth = app.add_subcommand("synth", "Complete a seeded synthetic low-rank matrix");
    qbf::SynthParams sp;
    std::string sy_out;
    SolverFlags sy_flags;
    synth->add_option("--rows", sp.rows, "M")->check(CLI::PositiveNumber);
    synth->add_option("--cols", sp.cols, "N")->check(CLI::PositiveNumber);
    synth->add_option("--rank", sp.rank, "True rank")->check(CLI::NonNegativeNumber);
    std::string sy_variant = "qdfn";
    synth->add_option("--variant", sy_variant, "qdfn, qdnn or qfnn")
        ->transform(CLI::IsMember({"qdfn", "qdnn", "qfnn"}, CLI::ignore_case));
    synth->add_option("--mr", sp.missing_ratio, "Missing ratio")->check(CLI::Range(0.0, 1.0));
    synth->add_option("--out", sy_out, "Write the JSON report into this directory");
    sy_flags.attach(synth);

    // bench
    auto* bench = app.add_subcommand("bench", "Run an image x MR x variant grid and write CSV");
    qbf::BenchParams bp;
    std::vector<std::string> bench_images;
    std::vector<std::string> bench_variants{"qdfn", "qdnn", "qfnn"};
    std::string be_out = "bench_out";
    SolverFlags be_flags;
    bench->add_option("--images", bench_images, "Input PNGs")->required();
    bp.missing_ratios = {0.5};
    bench->add_option("--mr", bp.missing_ratios, "Missing ratios")->check(CLI::Range(0.0, 1.0));
    bench->add_option("--variant", bench_variants, "Variants")
        ->transform(CLI::IsMember({"qdfn", "qdnn", "qfnn"}, CLI::ignore_case));
    bench->add_option("--jobs", bp.jobs, "Parallel grid cells")->check(CLI::PositiveNumber);
    bench->add_option("--out", be_out, "Output directory for bench.csv");
    be_flags.attach(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (inpaint->parsed()) {
            qbf::RunManifest m;
            if (!in_manifest.empty()) {
                m = qbf::read_manifest(in_manifest);
            } else {
                if (in_image.empty()) {
                    std::cerr << "qbf: inpaint needs --image or --manifest\n";
                    return 2;
                }
                m.inputs = {in_image};
                m.variant = kVariantNames.at(in_variant);
                m.missing_ratio = in_mr;
                m.seed = in_flags.seed;
                m.solver = in_flags.o.resolve(m.variant, in_flags.seed);
                m.output_dir = in_out;
            }
            const qbf::InpaintReport r = qbf::run_inpaint(m);
            std::cout << qbf::inpaint_report_json(r);
            return r.converged ? 0 : 1;
        }
        if (synth->parsed()) {
            sp.variant = kVariantNames.at(sy_variant);
            sp.seed = sy_flags.seed;
            sp.solver = sy_flags.o.resolve(sp.variant, sy_flags.seed);
            const qbf::SynthReport r = qbf::run_synth(sp);
            const std::string json = qbf::synth_report_json(sp, r);
            if (!sy_out.empty()) {
                write_file(std::filesystem::path(sy_out) / "synth.json", json);
            }
            std::cout << json;
            return r.converged ? 0 : 1;
        }
        if (bench->parsed()) {
            for (const auto& p : bench_images) {
                bp.images.emplace_back(p);
            }
            bp.variants.clear();
            for (const auto& v : bench_variants) {
                bp.variants.push_back(kVariantNames.at(v));
            }
            bp.seed = be_flags.seed;
            bp.overrides = be_flags.o;
            const auto rows = qbf::run_bench(bp);
            const std::string csv = qbf::bench_csv(rows);
            write_file(std::filesystem::path(be_out) / "bench.csv", csv);
            std::cout << csv;
            bool ok = true;
            for (const auto& r : rows) {
                if (!r.error.empty()) {
                    std::cerr << "qbf: " << r.image << " mr=" << r.mr << " " << qbf::to_string(r.variant)
                              << ": " << r.error << '\n';
                }
                ok = ok && r.error.empty() && r.converged;
            }
            return ok ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "qbf: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        return print_error(e);
    }
    return 2;
}
