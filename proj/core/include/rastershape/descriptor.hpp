#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rastershape/raster.hpp"
#include "rastershape/shape_io.hpp"

namespace rastershape {

enum class Variant { circ_radial, circ_angular, spiral_full, spiral_fixed };

std::string_view to_string(Variant variant);
Variant parse_variant(std::string_view text);

/// Raster kind the variant is sampled on.
RasterKind raster_kind_of(Variant variant);

/// Spec for `variant` with the given separation and sampling rate.
RasterSpec spec_for(Variant variant, int separation_px, int samples_per_cycle);

/// Normalized descriptor sequence; every value lies in [0, 1].
struct ShapeVector {
    Variant variant = Variant::circ_radial;
    RasterSpec spec;
    std::vector<double> values;

    friend bool operator==(const ShapeVector&, const ShapeVector&) = default;
};

/// Fraction of each circle's samples that fall inside the shape.
ShapeVector circular_radial_vector(const BinaryShape& shape, const RasterGrid& grid);

/// Fraction of each ray's samples (one per circle) that fall inside the shape.
ShapeVector angular_vector(const BinaryShape& shape, const RasterGrid& grid);

/// Fraction of each spiral turn's samples inside the shape.
ShapeVector spiral_full_cycle_vector(const BinaryShape& shape, const RasterGrid& grid);

/// Per-segment membership along the spiral, one segment per sample:
/// values[k*s + j] is 1 when sample (k, j) is inside the shape.
ShapeVector spiral_fixed_angle_vector(const BinaryShape& shape, const RasterGrid& grid);

struct ExtractOptions {
    /// When set, every shape gets exactly this many cycles and the separation
    /// becomes r_max / cycles (circular) or r_max / (cycles - 1) (spiral),
    /// which makes vectors scale-normalized. spec.separation_px is then only
    /// a label.
    std::optional<int> normalized_cycles;
};

/// centroid -> max radius -> cycle count -> grid -> variant.
ShapeVector extract(const BinaryShape& shape, const RasterSpec& spec, Variant variant,
                    const ExtractOptions& options = {});

/// Same pipeline reusing a precomputed measurement of `shape`.
ShapeVector extract(const BinaryShape& shape, const ShapeGeometry& geometry, const RasterSpec& spec,
                    Variant variant, const ExtractOptions& options = {});

}  // namespace rastershape
