#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "rastershape/rastershape.hpp"

namespace rastershape::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
    int threshold = 127;
    bool invert = false;

    LoadOptions load() const { return {threshold, invert}; }
};

void add_load_flags(CLI::App* cmd, Common& common) {
    cmd->add_option("--threshold", common.threshold, "PGM gray level above which a pixel is shape")
        ->check(CLI::Range(0, 255));
    cmd->add_flag("--invert", common.invert, "Swap shape and background");
}

int env_threads() {
    const char* raw = std::getenv("RASTERSHAPE_THREADS");
    if (!raw || !*raw) return 0;
    try {
        return std::max(0, std::stoi(raw));
    } catch (const std::exception&) {
        throw ParameterError(std::string("RASTERSHAPE_THREADS must be an integer, got '") + raw + "'");
    }
}

std::vector<BinaryShape> load_inputs(const fs::path& dir, const Common& common) {
    auto shapes = load_dataset(dir, common.load());
    if (shapes.empty()) throw DatasetError("no input images in '" + dir.string() + "'");
    return shapes;
}

std::string dataset_label(const fs::path& dir) {
    auto label = fs::weakly_canonical(dir).filename().string();
    if (label.empty()) label = dir.string();
    for (auto& c : label) {
        if (c == ',' || c == '\n' || c == '\r') c = '_';
    }
    return label;
}

OcclusionConfig parse_config(const std::string& text) {
    // variant:separation:samples
    std::stringstream ss(text);
    std::string variant, sep, samples;
    if (!std::getline(ss, variant, ':') || !std::getline(ss, sep, ':') || !std::getline(ss, samples)) {
        throw ParameterError("config '" + text + "' is not variant:separation:samples");
    }
    try {
        OcclusionConfig cfg{parse_variant(variant), std::stoi(sep), std::stoi(samples)};
        spec_for(cfg.variant, cfg.separation_px, cfg.samples_per_cycle);
        return cfg;
    } catch (const std::invalid_argument&) {
        throw ParameterError("config '" + text + "' has a non-numeric separation or samples value");
    }
}

struct IndexArgs {
    fs::path dir;
    std::string variant;
    int sep = 0;
    int samples = 0;
    fs::path out;
};

int cmd_index(const IndexArgs& a, const Common& common, std::ostream& out) {
    const auto variant = parse_variant(a.variant);
    const auto spec = spec_for(variant, a.sep, a.samples);
    const auto shapes = load_inputs(a.dir, common);
    SweepOptions options;
    options.threads = env_threads();
    const auto db = build_database(shapes, spec, variant, options);
    save(db, a.out);
    out << db.size() << " records (" << to_string(variant) << ", " << to_string(spec) << ") -> "
        << a.out.string() << '\n';
    return kExitOk;
}

struct QueryArgs {
    fs::path db;
    fs::path image;
    int k = 3;
    std::optional<std::string> variant;
    std::optional<int> sep;
    std::optional<int> samples;
    std::optional<fs::path> dump_grid;
};

int cmd_query(const QueryArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
    const auto db = load(a.db);
    const auto requested_variant = a.variant ? parse_variant(*a.variant) : db.variant();
    const RasterSpec requested{raster_kind_of(requested_variant),
                               a.sep.value_or(db.spec().separation_px),
                               a.samples.value_or(db.spec().samples_per_cycle)};
    if (requested_variant != db.variant() || !(requested == db.spec())) {
        err << "error: database spec does not match the requested extraction\n"
            << "  database:  " << to_string(db.variant()) << " " << to_string(db.spec()) << '\n'
            << "  requested: " << to_string(requested_variant) << " " << to_string(requested) << '\n';
        return kExitBadInput;
    }

    const auto shape = load_image(a.image, common.load());
    const auto geometry = measure(shape);
    if (a.dump_grid) {
        std::ofstream dump(*a.dump_grid);
        if (!dump) throw ParameterError("cannot write grid dump '" + a.dump_grid->string() + "'");
        write_grid_csv(make_grid(geometry.center, requested, cycle_count(requested, geometry.max_radius)), dump);
    }
    const auto vector = extract(shape, geometry, requested, requested_variant);
    const auto matches = query(db, vector, a.k);
    if (static_cast<std::size_t>(a.k) > matches.size()) {
        err << "warning: k=" << a.k << " but the database holds only " << matches.size()
            << " records; printing all of them\n";
    }
    char dist[64];
    for (std::size_t i = 0; i < matches.size(); ++i) {
        std::snprintf(dist, sizeof dist, "%.6f", matches[i].distance);
        out << (i + 1) << '\t' << matches[i].id << '\t' << matches[i].category << '\t' << dist << '\n';
    }
    return kExitOk;
}

struct SweepArgs {
    fs::path dir;
    std::string variant;
    std::vector<int> seps = kDefaultSeparations;
    std::vector<int> samples = kDefaultSamples;
    int k = 3;
    std::string efficiency = "at-least-one";
    std::optional<int> normalized;
    std::optional<std::string> label;
    std::optional<fs::path> out;
};

int cmd_sweep(const SweepArgs& a, const Common& common, std::ostream& out) {
    const auto variant = parse_variant(a.variant);
    SweepOptions options;
    options.retrieval.k = a.k;
    options.retrieval.mode = parse_efficiency_mode(a.efficiency);
    options.extract.normalized_cycles = a.normalized;
    options.threads = env_threads();
    for (int d : a.seps) spec_for(variant, d, 1);
    for (int s : a.samples) spec_for(variant, 1, s);

    const auto shapes = load_inputs(a.dir, common);
    const auto report = sweep(shapes, variant, a.seps, a.samples, options, a.label.value_or(dataset_label(a.dir)));
    if (a.out) {
        std::ofstream file(*a.out);
        if (!file) throw ParameterError("cannot write '" + a.out->string() + "'");
        write_sweep_csv(report, file);
        render_sweep_table(report, out);
    } else {
        write_sweep_csv(report, out);
    }
    return kExitOk;
}

struct OccludeArgs {
    fs::path dir;
    double fraction = 0.2;
    std::uint64_t seed = 1;
    int per_category = 2;
    int k = 3;
    std::vector<std::string> configs;
    std::optional<fs::path> out;
};

int cmd_occlude(const OccludeArgs& a, const Common& common, std::ostream& out) {
    std::vector<OcclusionConfig> configs;
    for (const auto& c : a.configs) configs.push_back(parse_config(c));
    if (configs.empty()) configs = default_occlusion_configs();

    const auto shapes = load_inputs(a.dir, common);
    SweepOptions options;
    options.retrieval.k = a.k;
    options.threads = env_threads();
    const auto rows = occlusion_experiment(shapes, configs, a.per_category, a.fraction, a.seed, options);

    if (a.out) {
        fs::create_directories(*a.out);
        for (const auto& shape : occlusion_queries(shapes, a.per_category, a.fraction, a.seed)) {
            write_pgm(shape, *a.out / (shape.id() + ".pgm"));
        }
        std::ofstream csv(*a.out / "occlusion.csv");
        if (!csv) throw ParameterError("cannot write into '" + a.out->string() + "'");
        write_occlusion_csv(rows, csv);
    }
    write_occlusion_csv(rows, out);
    return kExitOk;
}

int cmd_report(const fs::path& csv, std::ostream& out) {
    std::ifstream in(csv);
    if (!in) throw FormatError("cannot read '" + csv.string() + "'");
    const auto reports = read_sweep_csv(in);
    if (reports.empty()) throw FormatError("'" + csv.string() + "' holds no sweep rows");
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out << '\n';
        render_sweep_table(reports[i], out);
    }
    return kExitOk;
}

struct GenerateArgs {
    fs::path out;
    bool toy = false;
    synthetic::CorpusOptions corpus;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    const auto shapes = a.toy ? synthetic::toy_corpus(a.corpus.seed) : synthetic::corpus(a.corpus);
    fs::create_directories(a.out);
    for (const auto& s : shapes) write_pgm(s, a.out / (s.id() + ".pgm"));
    out << shapes.size() << " images -> " << a.out.string() << '\n';
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Raster-based shape vectors: indexing, retrieval and evaluation sweeps"};
    app.require_subcommand(1);
    Common common;

    IndexArgs index_args;
    auto* index = app.add_subcommand("index", "Build a descriptor database from a directory of PBM/PGM images");
    index->add_option("dir", index_args.dir, "Image directory")->required();
    index->add_option("--variant", index_args.variant, "circ_radial|circ_angular|spiral_full|spiral_fixed")->required();
    index->add_option("--sep", index_args.sep, "Separation between cycles (pixels)")->required();
    index->add_option("--samples", index_args.samples, "Samples per cycle")->required();
    index->add_option("--out", index_args.out, "Database file to write")->required();
    add_load_flags(index, common);

    QueryArgs query_args;
    auto* query_cmd = app.add_subcommand("query", "Print the k nearest database records for one image");
    query_cmd->add_option("db", query_args.db, "Database file")->required();
    query_cmd->add_option("image", query_args.image, "Query image")->required();
    query_cmd->add_option("--k", query_args.k, "Number of matches")->check(CLI::PositiveNumber);
    query_cmd->add_option("--variant", query_args.variant, "Expected variant (checked against the database)");
    query_cmd->add_option("--sep", query_args.sep, "Expected separation (checked against the database)");
    query_cmd->add_option("--samples", query_args.samples, "Expected samples per cycle (checked against the database)");
    query_cmd->add_option("--dump-grid", query_args.dump_grid, "Write the query raster as k,j,x,y CSV");
    add_load_flags(query_cmd, common);

    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "Efficiency/time sweep over separations x samples per cycle");
    sweep_cmd->add_option("dir", sweep_args.dir, "Image directory")->required();
    sweep_cmd->add_option("--variant", sweep_args.variant, "circ_radial|circ_angular|spiral_full|spiral_fixed")->required();
    sweep_cmd->add_option("--seps", sweep_args.seps, "Separations, e.g. 8,16,24,32")->delimiter(',');
    sweep_cmd->add_option("--samples", sweep_args.samples, "Samples per cycle, e.g. 4,6,8,12,24")->delimiter(',');
    sweep_cmd->add_option("--k", sweep_args.k, "Matches considered per query")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--efficiency", sweep_args.efficiency, "at-least-one|relevant-fraction");
    sweep_cmd->add_option("--normalized", sweep_args.normalized, "Fixed cycle count per shape (scale-normalized mode)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--label", sweep_args.label, "Dataset label for the report");
    sweep_cmd->add_option("--out", sweep_args.out, "CSV file to write (stdout when omitted)");
    add_load_flags(sweep_cmd, common);

    OccludeArgs occlude_args;
    auto* occlude_cmd = app.add_subcommand("occlude", "Occlusion robustness experiment");
    occlude_cmd->add_option("dir", occlude_args.dir, "Image directory")->required();
    occlude_cmd->add_option("--fraction", occlude_args.fraction, "Fraction of shape pixels erased")
        ->check(CLI::Range(0.0, 1.0));
    occlude_cmd->add_option("--seed", occlude_args.seed, "Occlusion seed");
    occlude_cmd->add_option("--per-category", occlude_args.per_category, "Occluded queries per category")
        ->check(CLI::PositiveNumber);
    occlude_cmd->add_option("--k", occlude_args.k, "Matches considered per query")->check(CLI::PositiveNumber);
    occlude_cmd->add_option("--config", occlude_args.configs,
                            "variant:separation:samples (repeatable; default: the four reference configurations)");
    occlude_cmd->add_option("--out", occlude_args.out, "Directory for occluded images and occlusion.csv");
    add_load_flags(occlude_cmd, common);

    fs::path report_csv;
    auto* report = app.add_subcommand("report", "Render a sweep CSV as text tables");
    report->add_option("csv", report_csv, "Sweep CSV")->required();

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "Write a synthetic shape corpus as PGM files");
    generate->add_option("--out", generate_args.out, "Output directory")->required();
    generate->add_flag("--toy", generate_args.toy, "3 categories x 4 members instead of the full corpus");
    generate->add_option("--categories", generate_args.corpus.categories)->check(CLI::PositiveNumber);
    generate->add_option("--per-category", generate_args.corpus.per_category)->check(CLI::PositiveNumber);
    generate->add_option("--seed", generate_args.corpus.seed);
    generate->add_option("--frame", generate_args.corpus.frame, "Square frame size in pixels")->check(CLI::Range(32, 4096));

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*index) return cmd_index(index_args, common, out);
        if (*query_cmd) return cmd_query(query_args, common, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep_args, common, out);
        if (*occlude_cmd) return cmd_occlude(occlude_args, common, out);
        if (*report) return cmd_report(report_csv, out);
        if (*generate) return cmd_generate(generate_args, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.is_input_error() ? kExitBadInput : kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace rastershape::cli
