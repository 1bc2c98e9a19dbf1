#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "globenv/commands.hpp"
#include "globenv/error.hpp"

namespace {

using namespace globenv;

template <typename T, typename Parse>
std::vector<T> parse_names(const std::vector<std::string>& names, Parse parse) {
    std::vector<T> out;
    for (const auto& name : names) {
        out.push_back(parse(name));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Global envelopes for sets of curves and the measure power study"};
    app.require_subcommand(1);

    // envelope
    cli::EnvelopeOptions env_opts;
    std::string env_measure = "erl";
    std::string env_output;
    std::string env_summary;
    auto* envelope = app.add_subcommand("envelope", "Global envelope and extremeness test for curve 1");
    envelope->add_option("-i,--input", env_opts.input, "Curves CSV")->required()->check(CLI::ExistingFile);
    envelope->add_option("-m,--measure", env_measure, "rank, erl, cont, area or qdir")->capture_default_str();
    envelope->add_option("-a,--alpha", env_opts.alpha, "Level in (0, 1)")->capture_default_str();
    envelope->add_option("--beta", env_opts.beta, "qdir tail probability in (0, 0.5)")->capture_default_str();
    envelope->add_option("-o,--output", env_output, "Envelope CSV");
    envelope->add_option("--summary", env_summary, "JSON summary file (stdout if omitted)");

    // simulate
    cli::SimulateOptions sim_opts;
    std::string sim_outlier = "none";
    std::string sim_output;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Simulated curves with an optional outlier in curve 1");
    simulate->add_option("-s,--s", sim_opts.s, "Number of curves")->capture_default_str();
    simulate->add_option("-d,--d", sim_opts.d, "Resolution (divides 2500)")->capture_default_str();
    simulate->add_option("--scale", sim_opts.scale, "Correlation scale (0 = independent)")->capture_default_str();
    simulate->add_option("--outlier", sim_outlier, "none, integral or maximum")->capture_default_str();
    auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "RNG seed (time-derived if omitted)");
    simulate->add_option("-o,--output", sim_output, "Curves CSV (stdout if omitted)");

    // study
    cli::StudyOptions study_opts;
    std::vector<std::size_t> s_list;
    std::vector<std::size_t> d_list;
    std::vector<double> scale_list;
    std::vector<std::string> outliers;
    std::vector<std::string> measures;
    double alpha = 0.05;
    std::size_t reps = 0;
    std::uint64_t study_seed = 0;
    std::string profile;
    std::size_t budget_mb = 512;
    auto* study = app.add_subcommand("study", "Monte Carlo power study over the scenario grid");
    auto* s_opt = study->add_option("--s-list", s_list, "Numbers of curves")->delimiter(',');
    auto* d_opt = study->add_option("--d-list", d_list, "Resolutions")->delimiter(',');
    auto* scale_opt = study->add_option("--scale-list", scale_list, "Correlation scales")->delimiter(',');
    auto* outlier_opt = study->add_option("--outliers", outliers, "Outlier kinds")->delimiter(',');
    auto* measure_opt = study->add_option("--measures", measures, "Measures")->delimiter(',');
    auto* alpha_opt = study->add_option("--alpha", alpha, "Level in (0, 1)");
    auto* reps_opt = study->add_option("--reps", reps, "Replications per cell");
    auto* study_seed_opt = study->add_option("--seed", study_seed, "Master seed (required)");
    study->add_option("--profile", profile, "Preset grid")->check(CLI::IsMember({"desk", "paper"}));
    study->add_option("--threads", study_opts.threads, "Worker threads (0 = OpenMP default)");
    study->add_option("--memory-budget-mb", budget_mb, "Pool memory budget")->capture_default_str();
    study->add_flag("--independent-cells", study_opts.grid.independent_cells,
                    "Fresh pool for every (s, d) cell");
    study->add_flag("-q,--quiet", study_opts.quiet, "No progress output");
    study->add_option("-o,--output", study_opts.output, "Study CSV")->required();

    // summarize
    cli::SummarizeOptions sum_opts;
    std::size_t f_s = 0;
    std::size_t f_d = 0;
    double f_scale = 0.0;
    std::string f_outlier;
    std::string f_measure;
    auto* summarize = app.add_subcommand("summarize", "Power by s, one block per panel line");
    summarize->add_option("-i,--input", sum_opts.input, "Study CSV")->required()->check(CLI::ExistingFile);
    auto* fs_opt = summarize->add_option("--s", f_s, "Only this s");
    auto* fd_opt = summarize->add_option("--d", f_d, "Only this resolution");
    auto* fscale_opt = summarize->add_option("--scale", f_scale, "Only this correlation scale");
    auto* foutlier_opt = summarize->add_option("--outlier", f_outlier, "Only this outlier kind");
    auto* fmeasure_opt = summarize->add_option("--measure", f_measure, "Only this measure");
    summarize->add_flag("--json", sum_opts.json, "JSON instead of text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitError;
    }

    try {
        if (envelope->parsed()) {
            env_opts.measure = parse_measure(env_measure);
            if (!env_output.empty()) env_opts.output = env_output;
            if (!env_summary.empty()) env_opts.summary = env_summary;
            return cli::cmd_envelope(env_opts, std::cout, std::cerr);
        }
        if (simulate->parsed()) {
            sim_opts.outlier = parse_outlier(sim_outlier);
            if (sim_seed_opt->count() > 0) sim_opts.seed = sim_seed;
            if (!sim_output.empty()) sim_opts.output = sim_output;
            return cli::cmd_simulate(sim_opts, std::cout, std::cerr);
        }
        if (study->parsed()) {
            const bool independent = study_opts.grid.independent_cells;
            if (profile == "desk") {
                study_opts.grid = desk_profile();
            }
            study_opts.grid.independent_cells = independent;
            study_opts.grid.memory_budget_bytes = budget_mb << 20;
            if (s_opt->count() > 0) study_opts.grid.s_list = s_list;
            if (d_opt->count() > 0) study_opts.grid.d_list = d_list;
            if (scale_opt->count() > 0) study_opts.grid.scale_list = scale_list;
            if (outlier_opt->count() > 0) study_opts.grid.outlier_list = parse_names<OutlierKind>(outliers, parse_outlier);
            if (measure_opt->count() > 0) study_opts.grid.measures = parse_names<MeasureKind>(measures, parse_measure);
            if (alpha_opt->count() > 0) study_opts.grid.alpha = alpha;
            if (reps_opt->count() > 0) study_opts.grid.reps = reps;
            if (study_seed_opt->count() > 0) study_opts.seed = study_seed;
            return cli::cmd_study(study_opts, std::cout, std::cerr);
        }
        if (summarize->parsed()) {
            if (fs_opt->count() > 0) sum_opts.filter.s = f_s;
            if (fd_opt->count() > 0) sum_opts.filter.d = f_d;
            if (fscale_opt->count() > 0) sum_opts.filter.scale = f_scale;
            if (foutlier_opt->count() > 0) sum_opts.filter.outlier = parse_outlier(f_outlier);
            if (fmeasure_opt->count() > 0) sum_opts.filter.measure = parse_measure(f_measure);
            return cli::cmd_summarize(sum_opts, std::cout, std::cerr);
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kExitError;
    }
    return cli::kExitError;
}
