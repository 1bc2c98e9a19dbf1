#include "globenv/commands.hpp"

#include <omp.h>

#include <chrono>
#include <fstream>
#include <ostream>

#include "globenv/csv_io.hpp"
#include "globenv/envelope.hpp"
#include "globenv/error.hpp"

namespace globenv::cli {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InvalidInput("cannot open '" + path.string() + "'");
    }
    return in;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

} // namespace

int cmd_envelope(const EnvelopeOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = open_input(opts.input);
        const CurveSet curves = read_curves_csv(in);
        const MeasureKind kinds[] = {opts.measure};
        const MeasureBundle bundle = compute_measures(curves, kinds, opts.beta);
        const MeasureVector& mv = bundle.get(opts.measure);
        const QdirParams* qdir = bundle.qdir ? &*bundle.qdir : nullptr;
        const GlobalEnvelope env = build_envelope(curves, mv, opts.alpha, qdir);

        if (opts.output) {
            const auto central = envelope_central_curve(curves, env, opts.measure, qdir);
            write_file_atomic(*opts.output, [&](std::ostream& os) {
                write_envelope_csv(os, curves.grid(), env, central);
            });
        }

        const auto extreme = classify(mv, env.crit);
        std::vector<std::size_t> extreme_indices;
        for (std::size_t i = 0; i < extreme.size(); ++i) {
            if (extreme[i]) {
                extreme_indices.push_back(i + 1);
            }
        }
        const nlohmann::json summary = {{"measure", std::string(to_string(opts.measure))},
                                        {"alpha", opts.alpha},
                                        {"crit", env.crit},
                                        {"extreme_indices", extreme_indices},
                                        {"s", curves.num_curves()},
                                        {"d", curves.num_points()}};
        if (opts.summary) {
            write_file_atomic(*opts.summary, [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
        } else {
            out << summary.dump(2) << '\n';
        }
        return extreme.front() ? kExitExtreme : kExitNotExtreme;
    });
}

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::uint64_t seed = 0;
        if (opts.seed) {
            seed = *opts.seed;
        } else {
            seed = static_cast<std::uint64_t>(
                std::chrono::system_clock::now().time_since_epoch().count());
            err << "seed: " << seed << '\n';
        }
        const GpConfig config{opts.scale, kBaseResolution, seed};
        const CurveSet curves = simulate_extracted(config, opts.outlier, opts.s, opts.d);
        if (opts.output) {
            write_file_atomic(*opts.output, [&](std::ostream& os) { write_curves_csv(os, curves); });
        } else {
            write_curves_csv(out, curves);
        }
        return 0;
    });
}

int cmd_study(const StudyOptions& opts, std::ostream& /*out*/, std::ostream& err) {
    return guarded(err, [&] {
        if (!opts.seed) {
            throw InvalidInput("study runs need an explicit --seed");
        }
        if (opts.threads < 0) {
            throw InvalidInput("--threads must be >= 0");
        }
        if (opts.threads > 0) {
            omp_set_num_threads(opts.threads);
        }
        ScenarioGrid grid = opts.grid;
        grid.master_seed = *opts.seed;
        grid.validate();
        if (!opts.quiet) {
            err << "study: " << grid.cell_count() << " cells, " << grid.reps << " reps, "
                << omp_get_max_threads() << " threads\n";
        }
        const ProgressFn progress = [&](std::size_t done, std::size_t total) {
            if (!opts.quiet) {
                err << "  block " << done << "/" << total << " done\n";
            }
        };
        const PowerTable table = run_study(grid, progress);
        write_file_atomic(opts.output, [&](std::ostream& os) { write_study_csv(os, table); });
        return 0;
    });
}

int cmd_summarize(const SummarizeOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        auto in = open_input(opts.input);
        const PowerTable table = read_study_csv(in);
        const auto blocks = summarize(table, opts.filter);
        if (opts.json) {
            out << summary_json(blocks).dump(2) << '\n';
        } else {
            out << summary_text(blocks);
        }
        return 0;
    });
}

} // namespace globenv::cli
