#include "rastershape/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "rastershape/error.hpp"

namespace rastershape {

std::string_view to_string(EfficiencyMode mode) {
    return mode == EfficiencyMode::at_least_one ? "at-least-one" : "relevant-fraction";
}

EfficiencyMode parse_efficiency_mode(std::string_view text) {
    if (text == "at-least-one") return EfficiencyMode::at_least_one;
    if (text == "relevant-fraction") return EfficiencyMode::relevant_fraction;
    throw ParameterError("unknown efficiency mode '" + std::string(text) +
                         "' (expected at-least-one or relevant-fraction)");
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
// failure by index.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_thread_count(threads)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<ShapeGeometry> measure_all(const std::vector<BinaryShape>& dataset, int threads) {
    std::vector<ShapeGeometry> out(dataset.size());
    parallel_for(dataset.size(), threads, [&](std::size_t i) { out[i] = measure(dataset[i]); });
    return out;
}

DescriptorDatabase build_with(const std::vector<BinaryShape>& dataset,
                              const std::vector<ShapeGeometry>& geometry, const RasterSpec& spec,
                              Variant variant, const SweepOptions& options) {
    std::vector<ShapeVector> vectors(dataset.size());
    parallel_for(dataset.size(), options.threads, [&](std::size_t i) {
        vectors[i] = extract(dataset[i], geometry[i], spec, variant, options.extract);
    });
    DescriptorDatabase db(spec, variant);
    db.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        db.add({dataset[i].id(), dataset[i].category(), std::move(vectors[i])});
    }
    return db;
}

std::vector<DescriptorRecord> as_queries(const DescriptorDatabase& db) { return db.records(); }

void check_query_compat(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries) {
    for (const auto& q : queries) {
        if (q.vector.variant != db.variant() || !(q.vector.spec == db.spec())) {
            throw IncompatibleError("query '" + q.id + "' was built as " +
                                    std::string(to_string(q.vector.variant)) + " [" +
                                    to_string(q.vector.spec) + "], database holds " +
                                    std::string(to_string(db.variant())) + " [" + to_string(db.spec()) + "]");
        }
    }
}

// Number of same-category hits credited to one query.
double score(const std::vector<Match>& matches, const std::string& category, EfficiencyMode mode) {
    const auto hits = std::count_if(matches.begin(), matches.end(),
                                    [&](const Match& m) { return m.category == category; });
    if (mode == EfficiencyMode::at_least_one) return hits > 0 ? 1.0 : 0.0;
    return static_cast<double>(hits);
}

double run_queries(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries,
                   const RetrievalOptions& options) {
    double credited = 0.0;
    for (const auto& q : queries) {
        const auto matches = query(db, q.vector, options.k,
                                   options.exclude_self ? std::optional<std::string>(q.id) : std::nullopt);
        credited += score(matches, q.category, options.mode);
    }
    const double denom = static_cast<double>(queries.size()) *
                         (options.mode == EfficiencyMode::relevant_fraction ? options.k : 1);
    return 100.0 * credited / denom;
}

void validate(const RetrievalOptions& options, const std::vector<DescriptorRecord>& queries) {
    if (options.k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(options.k));
    if (queries.empty()) throw DatasetError("no queries to evaluate");
}

std::vector<int> unique_in_order(const std::vector<int>& values, const char* what) {
    if (values.empty()) throw ParameterError(std::string("empty ") + what + " list");
    std::vector<int> out;
    for (int v : values) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
    return out;
}

}  // namespace

double retrieval_efficiency(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries,
                            const RetrievalOptions& options) {
    validate(options, queries);
    check_query_compat(db, queries);
    return run_queries(db, queries, options);
}

TimedRetrieval timed_retrieval(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries,
                               const RetrievalOptions& options) {
    validate(options, queries);
    check_query_compat(db, queries);

    run_queries(db, queries, options);  // warm-up
    const auto start = std::chrono::steady_clock::now();
    const double efficiency = run_queries(db, queries, options);
    const auto stop = std::chrono::steady_clock::now();

    TimedRetrieval out;
    out.total_time_s = std::chrono::duration<double>(stop - start).count();
    out.avg_time_s = out.total_time_s / static_cast<double>(queries.size());
    out.efficiency_pct = efficiency;
    return out;
}

std::vector<int> SweepReport::separations() const {
    std::vector<int> out;
    for (const auto& c : cells) {
        if (std::find(out.begin(), out.end(), c.separation_px) == out.end()) out.push_back(c.separation_px);
    }
    return out;
}

std::vector<int> SweepReport::samples() const {
    std::vector<int> out;
    for (const auto& c : cells) {
        if (std::find(out.begin(), out.end(), c.samples_per_cycle) == out.end()) {
            out.push_back(c.samples_per_cycle);
        }
    }
    return out;
}

const SweepCell* SweepReport::find(int separation_px, int samples_per_cycle) const {
    for (const auto& c : cells) {
        if (c.separation_px == separation_px && c.samples_per_cycle == samples_per_cycle) return &c;
    }
    return nullptr;
}

DescriptorDatabase build_database(const std::vector<BinaryShape>& dataset, const RasterSpec& spec,
                                  Variant variant, const SweepOptions& options) {
    return build_with(dataset, measure_all(dataset, options.threads), spec, variant, options);
}

SweepReport sweep(const std::vector<BinaryShape>& dataset, Variant variant,
                  const std::vector<int>& separations, const std::vector<int>& samples,
                  const SweepOptions& options, std::string dataset_label) {
    if (dataset.empty()) throw DatasetError("sweep needs at least one shape");
    const auto seps = unique_in_order(separations, "separation");
    const auto rates = unique_in_order(samples, "samples");
    const auto geometry = measure_all(dataset, options.threads);

    SweepReport report{variant, std::move(dataset_label), {}};
    for (int d : seps) {
        for (int s : rates) {
            const auto db = build_with(dataset, geometry, spec_for(variant, d, s), variant, options);
            const auto timed = timed_retrieval(db, as_queries(db), options.retrieval);
            report.cells.push_back({d, s, timed.efficiency_pct, timed.total_time_s, timed.avg_time_s});
        }
    }
    return report;
}

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

constexpr std::string_view kSweepHeader =
    "variant,dataset,separation,samples,efficiency_pct,total_time_s,avg_time_s";

}  // namespace

void write_sweep_csv(const SweepReport& report, std::ostream& out, bool header) {
    if (header) out << kSweepHeader << '\n';
    for (const auto& c : report.cells) {
        out << to_string(report.variant) << ',' << report.dataset << ',' << c.separation_px << ','
            << c.samples_per_cycle << ',' << fixed(c.efficiency_pct, 1) << ',' << fixed(c.total_time_s, 3)
            << ',' << fixed(c.avg_time_s, 3) << '\n';
    }
}

std::vector<SweepReport> read_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty sweep CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kSweepHeader) throw FormatError("unexpected sweep CSV header '" + line + "'");

    std::vector<SweepReport> reports;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 7) {
            throw FormatError("sweep CSV line " + std::to_string(line_no) + ": expected 7 fields");
        }
        SweepCell cell;
        Variant variant;
        try {
            variant = parse_variant(f[0]);
            cell.separation_px = std::stoi(f[2]);
            cell.samples_per_cycle = std::stoi(f[3]);
            cell.efficiency_pct = std::stod(f[4]);
            cell.total_time_s = std::stod(f[5]);
            cell.avg_time_s = std::stod(f[6]);
        } catch (const std::exception& e) {
            throw FormatError("sweep CSV line " + std::to_string(line_no) + ": " + e.what());
        }
        auto it = std::find_if(reports.begin(), reports.end(), [&](const SweepReport& r) {
            return r.variant == variant && r.dataset == f[1];
        });
        if (it == reports.end()) {
            reports.push_back({variant, f[1], {}});
            it = std::prev(reports.end());
        }
        if (it->find(cell.separation_px, cell.samples_per_cycle)) {
            throw FormatError("sweep CSV line " + std::to_string(line_no) + ": duplicate cell");
        }
        it->cells.push_back(cell);
    }
    return reports;
}

void render_sweep_table(const SweepReport& report, std::ostream& out) {
    const auto seps = report.separations();
    const auto rates = report.samples();
    const auto table = [&](const char* title, auto value, int decimals) {
        out << to_string(report.variant) << " on " << report.dataset << ": " << title << '\n';
        out << std::setw(12) << "separation";
        for (int s : rates) out << std::setw(10) << (std::to_string(s) + " spc");
        out << '\n';
        for (int d : seps) {
            out << std::setw(12) << d;
            for (int s : rates) {
                const auto* c = report.find(d, s);
                out << std::setw(10) << (c ? fixed(value(*c), decimals) : std::string("-"));
            }
            out << '\n';
        }
    };
    table("average retrieval efficiency (%)", [](const SweepCell& c) { return c.efficiency_pct; }, 1);
    out << '\n';
    table("total retrieval time (s)", [](const SweepCell& c) { return c.total_time_s; }, 3);
}

std::vector<OcclusionConfig> default_occlusion_configs() {
    return {
        {Variant::circ_radial, 24, 24},
        {Variant::spiral_full, 32, 24},
        {Variant::spiral_fixed, 24, 12},
        {Variant::circ_angular, 16, 8},
    };
}

std::vector<BinaryShape> occlusion_queries(const std::vector<BinaryShape>& dataset, int per_category,
                                           double fraction, std::uint64_t seed) {
    if (per_category < 1) throw ParameterError("per-category count must be >= 1");
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw ParameterError("occlusion fraction must lie in [0,1), got " + std::to_string(fraction));
    }
    std::vector<std::string> order;
    std::map<std::string, std::vector<const BinaryShape*>> members;
    for (const auto& s : dataset) {
        auto& bucket = members[s.category()];
        if (bucket.empty()) order.push_back(s.category());
        bucket.push_back(&s);
    }

    std::vector<BinaryShape> out;
    std::uint64_t index = 0;
    for (const auto& cat : order) {
        auto bucket = members[cat];
        if (bucket.size() < static_cast<std::size_t>(per_category)) {
            throw DatasetError("category '" + cat + "' has " + std::to_string(bucket.size()) +
                               " members, occlusion needs " + std::to_string(per_category));
        }
        std::sort(bucket.begin(), bucket.end(),
                  [](const BinaryShape* a, const BinaryShape* b) { return a->id() < b->id(); });
        for (int i = 0; i < per_category; ++i) {
            const std::uint64_t shape_seed = seed ^ (0x9E3779B97F4A7C15ull * ++index);
            out.push_back(occlude(*bucket[static_cast<std::size_t>(i)], fraction, shape_seed));
        }
    }
    return out;
}

std::vector<OcclusionRow> occlusion_experiment(const std::vector<BinaryShape>& dataset,
                                               const std::vector<OcclusionConfig>& configs,
                                               int per_category, double fraction, std::uint64_t seed,
                                               const SweepOptions& options) {
    if (dataset.empty()) throw DatasetError("occlusion experiment needs at least one shape");
    const auto occluded = occlusion_queries(dataset, per_category, fraction, seed);
    const auto geometry = measure_all(dataset, options.threads);
    const auto occluded_geometry = measure_all(occluded, options.threads);

    auto retrieval = options.retrieval;
    retrieval.exclude_self = false;

    std::vector<OcclusionRow> rows;
    for (const auto& cfg : configs) {
        const auto spec = spec_for(cfg.variant, cfg.separation_px, cfg.samples_per_cycle);
        const auto db = build_with(dataset, geometry, spec, cfg.variant, options);
        std::vector<DescriptorRecord> queries;
        queries.reserve(occluded.size());
        for (std::size_t i = 0; i < occluded.size(); ++i) {
            queries.push_back({occluded[i].id(), occluded[i].category(),
                               extract(occluded[i], occluded_geometry[i], spec, cfg.variant, options.extract)});
        }
        rows.push_back({cfg, retrieval_efficiency(db, queries, retrieval)});
    }
    return rows;
}

void write_occlusion_csv(const std::vector<OcclusionRow>& rows, std::ostream& out) {
    out << "variant,separation,samples,efficiency_pct\n";
    for (const auto& r : rows) {
        out << to_string(r.config.variant) << ',' << r.config.separation_px << ','
            << r.config.samples_per_cycle << ',' << fixed(r.efficiency_pct, 1) << '\n';
    }
}

}  // namespace rastershape
