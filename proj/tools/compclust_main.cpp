// compclust: batch analytics over team-composition match records.
//
// Subcommands:
//   analyze  ingest -> co-occurrence -> JSD -> UPGMA -> silhouette, with
//            reports and dendrogram exports written to an output directory
//   compare  run two analyses (pre/post patch) and report impact metrics
//   synth    generate a planted-role dataset in the wide CSV format

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "compclust/analysis.hpp"
#include "compclust/errors.hpp"
#include "compclust/exports.hpp"
#include "compclust/report.hpp"
#include "compclust/synth.hpp"

namespace fs = std::filesystem;
using namespace compclust;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

struct CommonOptions {
    std::string format = "wide";
    std::string map_filter;
    int k_override = 0;  // 0 = silhouette-selected
    bool sqrt_distance = false;
    bool lenient = false;
};

struct EmitSet {
    bool json = true;
    bool csv = true;
    bool newick = true;
    bool dot = true;
};

EmitSet parse_emit(const std::vector<std::string>& values) {
    if (values.empty()) return {};
    EmitSet emit{false, false, false, false};
    for (const auto& value : values) {
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = fold_name(item);
            if (item == "json") emit.json = true;
            else if (item == "csv") emit.csv = true;
            else if (item == "newick") emit.newick = true;
            else if (item == "dot") emit.dot = true;
            else if (!item.empty()) {
                throw ValidationError("unknown --emit format '" + item +
                                      "' (expected json, csv, newick, dot)");
            }
        }
    }
    return emit;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open input file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write output file: " + path.string());
    }
    out << content;
}

struct LoadedAnalysis {
    AnalysisSnapshot snapshot;
    RunFingerprint fingerprint;
    IngestStats stats;
    CooccurrenceMatrix matrix;
    std::vector<TeamComposition> comps;
};

LoadedAnalysis run_analysis(const std::string& label, const std::vector<std::string>& inputs,
                            const CommonOptions& opts) {
    const InputFormat format = [&] {
        const std::string f = fold_name(opts.format);
        if (f == "wide") return InputFormat::Wide;
        if (f == "long") return InputFormat::Long;
        throw ValidationError("unknown --format '" + opts.format + "' (expected wide or long)");
    }();
    const Strictness strictness = opts.lenient ? Strictness::Lenient : Strictness::Strict;

    RunFingerprint fp;
    fp.input_paths = inputs;
    fp.format = fold_name(opts.format);
    if (!opts.map_filter.empty()) fp.map_filter = opts.map_filter;
    if (opts.k_override > 0) fp.k_override = opts.k_override;
    fp.sqrt_distance = opts.sqrt_distance;
    fp.strictness = opts.lenient ? "lenient" : "strict";

    IngestStats stats;
    std::vector<RawRecord> records;
    for (const auto& path : inputs) {
        const std::string bytes = read_file(path);
        fp.input_hashes.push_back(hex64(fnv1a64(bytes)));
        std::istringstream in(bytes);
        auto file_records = parse_records(in, format, strictness, &stats);
        records.insert(records.end(), std::make_move_iterator(file_records.begin()),
                       std::make_move_iterator(file_records.end()));
    }

    std::optional<std::string> map_filter;
    if (!opts.map_filter.empty()) map_filter = opts.map_filter;
    auto comps = expand_and_filter(records, map_filter, &stats);

    PipelineOptions pipeline;
    if (opts.k_override > 0) pipeline.k_override = opts.k_override;
    pipeline.sqrt_distance = opts.sqrt_distance;
    AnalysisSnapshot snapshot = analyze_compositions(label, comps, pipeline);
    CooccurrenceMatrix matrix = build_cooccurrence(comps, snapshot.roster);

    return LoadedAnalysis{std::move(snapshot), std::move(fp), stats, std::move(matrix),
                          std::move(comps)};
}

void write_analysis_outputs(const fs::path& out_dir, const std::string& prefix,
                            const LoadedAnalysis& run, const EmitSet& emit) {
    fs::create_directories(out_dir);
    const auto path = [&](const std::string& name) { return out_dir / (prefix + name); };

    if (emit.json) {
        write_file(path("report.json"),
                   analysis_report_json(run.snapshot, run.fingerprint, run.stats).dump(2) + "\n");
        write_file(path("cooccurrence.json"), cooccurrence_json(run.matrix).dump(2) + "\n");
        write_file(path("vectors.json"),
                   vectors_json(run.snapshot.vectors, run.snapshot.roster).dump(2) + "\n");
        write_file(path("distance.json"), distance_json(run.snapshot.distances).dump(2) + "\n");
        write_file(path("dendrogram.json"), dendrogram_json(run.snapshot.dendrogram).dump(2) + "\n");
    }
    if (emit.csv) {
        write_file(path("cooccurrence.csv"), cooccurrence_csv(run.matrix));
        write_file(path("vectors.csv"), vectors_csv(run.snapshot.vectors, run.snapshot.roster));
        write_file(path("distance.csv"), distance_csv(run.snapshot.distances));
        write_file(path("assignment.csv"), assignment_csv(run.snapshot.assignment));
        if (!run.snapshot.sweep.scores.empty()) {
            write_file(path("sweep.csv"), sweep_csv(run.snapshot.sweep));
        }
        write_file(path("compositions.csv"), compositions_to_wide_csv(run.comps));
    }
    if (emit.newick) {
        write_file(path("dendrogram.newick"), to_newick(run.snapshot.dendrogram) + "\n");
    }
    if (emit.dot) {
        write_file(path("dendrogram.dot"), to_dot(run.snapshot.dendrogram));
    }
}

void print_cluster_summary(const AnalysisSnapshot& snap) {
    std::cout << "compositions: " << snap.composition_count << "\n";
    std::cout << "agents: " << snap.roster.size();
    if (!snap.excluded_agents.empty()) {
        std::cout << " (" << snap.excluded_agents.size() << " excluded, zero support)";
    }
    std::cout << "\n";
    if (!snap.sweep.scores.empty()) {
        std::cout << "silhouette best_k: " << snap.sweep.best_k
                  << " (score " << fmt_g17(snap.sweep.best_score) << ")\n";
    }
    std::cout << "chosen k: " << snap.chosen_k << "\n";
    std::vector<std::vector<std::string>> clusters(static_cast<std::size_t>(snap.chosen_k));
    for (std::size_t i = 0; i < snap.assignment.labels.size(); ++i) {
        clusters[static_cast<std::size_t>(snap.assignment.labels[i])].push_back(
            snap.assignment.agents[i]);
    }
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        std::cout << "  cluster " << c << ":";
        for (const auto& agent : clusters[c]) std::cout << ' ' << agent;
        std::cout << "\n";
    }
}

int cmd_analyze(const std::vector<std::string>& inputs, const CommonOptions& opts,
                const std::string& out_dir, const EmitSet& emit) {
    std::string label;
    for (const auto& input : inputs) {
        if (!label.empty()) label += "+";
        label += fs::path(input).filename().string();
    }
    LoadedAnalysis run = run_analysis(label, inputs, opts);
    write_analysis_outputs(out_dir, "", run, emit);
    print_cluster_summary(run.snapshot);
    return kExitOk;
}

int cmd_compare(const std::string& pre_input, const std::string& post_input,
                const CommonOptions& opts, const std::string& out_dir, const EmitSet& emit) {
    LoadedAnalysis pre = run_analysis("pre:" + fs::path(pre_input).filename().string(),
                                      {pre_input}, opts);
    LoadedAnalysis post = run_analysis("post:" + fs::path(post_input).filename().string(),
                                       {post_input}, opts);

    PatchImpactReport report = compare_snapshots(pre.snapshot, post.snapshot);

    fs::create_directories(out_dir);
    write_analysis_outputs(fs::path(out_dir), "pre_", pre, emit);
    write_analysis_outputs(fs::path(out_dir), "post_", post, emit);
    if (emit.json) {
        write_file(fs::path(out_dir) / "compare.json",
                   patch_report_json(report, pre.fingerprint, post.fingerprint).dump(2) + "\n");
    }
    write_file(fs::path(out_dir) / "compare.md", patch_report_markdown(report));

    std::cout << "pre k: " << report.pre_k << ", post k: " << report.post_k << "\n";
    std::cout << "matched cluster pairs: " << report.matching.matches.size() << "\n";
    std::cout << "membership shifts: " << report.shifts.shifted.size() << "\n";
    return kExitOk;
}

int cmd_synth(const std::string& model_path, std::uint64_t seed, bool seed_given,
              const std::string& out_path) {
    std::ifstream in(model_path);
    if (!in) {
        throw ValidationError("cannot open model spec: " + model_path);
    }
    PlantedModel model = load_model(in);
    if (seed_given) model.seed = seed;

    const auto comps = generate(model);
    if (fs::path(out_path).has_parent_path()) {
        fs::create_directories(fs::path(out_path).parent_path());
    }
    write_file(out_path, compositions_to_wide_csv(comps));
    std::cout << "wrote " << comps.size() << " compositions to " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Team-composition clustering and balance-patch analytics"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Cluster agents from match records");
    std::vector<std::string> inputs;
    CommonOptions opts;
    std::string out_dir = "out";
    std::vector<std::string> emit_values;
    analyze->add_option("--input,-i", inputs, "Input CSV file(s)")->required();
    analyze->add_option("--format,-f", opts.format, "Input layout: wide or long");
    analyze->add_option("--map,-m", opts.map_filter, "Keep only records on this map");
    analyze->add_option("--k,-k", opts.k_override, "Cluster-count override (default: silhouette)");
    analyze->add_flag("--sqrt-distance", opts.sqrt_distance, "Use sqrt(JSD), the metric variant");
    analyze->add_flag("--lenient", opts.lenient, "Skip and log bad rows/groups instead of aborting");
    analyze->add_option("--out,-o", out_dir, "Output directory");
    analyze->add_option("--emit,-e", emit_values, "Output formats: json,csv,newick,dot");

    // compare
    auto* compare = app.add_subcommand("compare", "Compare pre- and post-patch analyses");
    std::string pre_input, post_input;
    CommonOptions compare_opts;
    std::string compare_out = "out";
    std::vector<std::string> compare_emit;
    compare->add_option("--pre", pre_input, "Pre-patch input CSV")->required();
    compare->add_option("--post", post_input, "Post-patch input CSV")->required();
    compare->add_option("--format,-f", compare_opts.format, "Input layout: wide or long");
    compare->add_option("--map,-m", compare_opts.map_filter, "Keep only records on this map");
    compare->add_option("--k,-k", compare_opts.k_override, "Cluster-count override for both runs");
    compare->add_flag("--sqrt-distance", compare_opts.sqrt_distance, "Use sqrt(JSD)");
    compare->add_flag("--lenient", compare_opts.lenient, "Skip and log bad rows/groups");
    compare->add_option("--out,-o", compare_out, "Output directory");
    compare->add_option("--emit,-e", compare_emit, "Output formats: json,csv,newick,dot");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a planted-role dataset");
    std::string model_path, synth_out = "synth.csv";
    std::uint64_t seed = 0;
    synth->add_option("--model", model_path, "Model spec (JSON)")->required();
    auto* seed_opt = synth->add_option("--seed,-s", seed, "Seed override");
    synth->add_option("--out,-o", synth_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze)) {
            return cmd_analyze(inputs, opts, out_dir, parse_emit(emit_values));
        }
        if (app.got_subcommand(compare)) {
            return cmd_compare(pre_input, post_input, compare_opts, compare_out,
                               parse_emit(compare_emit));
        }
        if (app.got_subcommand(synth)) {
            return cmd_synth(model_path, seed, seed_opt->count() > 0, synth_out);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
