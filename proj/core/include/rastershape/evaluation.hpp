#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rastershape/descriptor.hpp"
#include "rastershape/matcher.hpp"
#include "rastershape/shape_io.hpp"

namespace rastershape {

enum class EfficiencyMode {
    /// A query is recognized when any of its top-k matches shares its category.
    at_least_one,
    /// Same-category matches among the top-k, divided by k * |queries|.
    relevant_fraction,
};

std::string_view to_string(EfficiencyMode mode);
EfficiencyMode parse_efficiency_mode(std::string_view text);

struct RetrievalOptions {
    int k = 3;
    EfficiencyMode mode = EfficiencyMode::at_least_one;
    /// Skip the database record whose id equals the query id.
    bool exclude_self = true;
};

/// Percentage in [0, 100].
double retrieval_efficiency(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries,
                            const RetrievalOptions& options = {});

struct TimedRetrieval {
    double total_time_s = 0.0;
    double avg_time_s = 0.0;
    double efficiency_pct = 0.0;
};

/// Times the query loop only (distances and top-k selection), single-threaded,
/// after one untimed warm-up pass.
TimedRetrieval timed_retrieval(const DescriptorDatabase& db, const std::vector<DescriptorRecord>& queries,
                               const RetrievalOptions& options = {});

struct SweepCell {
    int separation_px = 0;
    int samples_per_cycle = 0;
    double efficiency_pct = 0.0;
    double total_time_s = 0.0;
    double avg_time_s = 0.0;
};

struct SweepReport {
    Variant variant = Variant::circ_radial;
    std::string dataset;
    /// Row-major over the requested separations, then samples.
    std::vector<SweepCell> cells;

    std::vector<int> separations() const;
    std::vector<int> samples() const;
    const SweepCell* find(int separation_px, int samples_per_cycle) const;
};

struct SweepOptions {
    RetrievalOptions retrieval;
    ExtractOptions extract;
    /// Extraction workers; 0 picks the hardware concurrency.
    int threads = 0;
};

inline const std::vector<int> kDefaultSeparations{8, 16, 24, 32};
inline const std::vector<int> kDefaultSamples{4, 6, 8, 12, 24};

/// Extracts descriptors for every (separation, samples) pair, builds the
/// database, and runs leave-self-out timed retrieval over all records.
/// Cells run one after another.
SweepReport sweep(const std::vector<BinaryShape>& dataset, Variant variant,
                  const std::vector<int>& separations, const std::vector<int>& samples,
                  const SweepOptions& options = {}, std::string dataset_label = "dataset");

/// Descriptors for every shape under one spec, in dataset order.
DescriptorDatabase build_database(const std::vector<BinaryShape>& dataset, const RasterSpec& spec,
                                  Variant variant, const SweepOptions& options = {});

// variant,dataset,separation,samples,efficiency_pct,total_time_s,avg_time_s
void write_sweep_csv(const SweepReport& report, std::ostream& out, bool header = true);
/// Groups rows by (variant, dataset) in order of first appearance.
std::vector<SweepReport> read_sweep_csv(std::istream& in);

/// Aligned text tables (separations down, samples across) for efficiency and
/// total time.
void render_sweep_table(const SweepReport& report, std::ostream& out);

struct OcclusionConfig {
    Variant variant = Variant::circ_radial;
    int separation_px = 0;
    int samples_per_cycle = 0;
};

/// circ_radial 24/24, spiral_full 32/24, spiral_fixed 24/12, circ_angular 16/8.
std::vector<OcclusionConfig> default_occlusion_configs();

struct OcclusionRow {
    OcclusionConfig config;
    double efficiency_pct = 0.0;
};

/// Occluded copies of the first `per_category` members (by id) of every
/// category, in category order of first appearance.
std::vector<BinaryShape> occlusion_queries(const std::vector<BinaryShape>& dataset, int per_category,
                                           double fraction, std::uint64_t seed);

/// Matches occluded queries against databases built from the clean dataset.
std::vector<OcclusionRow> occlusion_experiment(const std::vector<BinaryShape>& dataset,
                                               const std::vector<OcclusionConfig>& configs,
                                               int per_category, double fraction, std::uint64_t seed,
                                               const SweepOptions& options = {});

// variant,separation,samples,efficiency_pct
void write_occlusion_csv(const std::vector<OcclusionRow>& rows, std::ostream& out);

/// 0 -> hardware concurrency (at least 1).
int resolve_thread_count(int requested);

}  // namespace rastershape
