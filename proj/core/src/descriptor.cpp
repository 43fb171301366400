#include "rastershape/descriptor.hpp"

#include <cmath>

#include "rastershape/error.hpp"

namespace rastershape {

std::string_view to_string(Variant variant) {
    switch (variant) {
    case Variant::circ_radial: return "circ_radial";
    case Variant::circ_angular: return "circ_angular";
    case Variant::spiral_full: return "spiral_full";
    case Variant::spiral_fixed: return "spiral_fixed";
    }
    return "unknown";
}

Variant parse_variant(std::string_view text) {
    if (text == "circ_radial") return Variant::circ_radial;
    if (text == "circ_angular") return Variant::circ_angular;
    if (text == "spiral_full") return Variant::spiral_full;
    if (text == "spiral_fixed") return Variant::spiral_fixed;
    throw ParameterError("unknown variant '" + std::string(text) +
                         "' (expected circ_radial, circ_angular, spiral_full or spiral_fixed)");
}

RasterKind raster_kind_of(Variant variant) {
    return variant == Variant::circ_radial || variant == Variant::circ_angular ? RasterKind::circular
                                                                               : RasterKind::spiral;
}

RasterSpec spec_for(Variant variant, int separation_px, int samples_per_cycle) {
    RasterSpec spec{raster_kind_of(variant), separation_px, samples_per_cycle};
    spec.validate();
    return spec;
}

namespace {

constexpr double kAlignmentTolerance = 1e-6;

void check_inputs(const BinaryShape& shape, const RasterGrid& grid, RasterKind expected,
                  const char* op) {
    if (grid.spec.kind != expected) {
        throw ParameterError(std::string(op) + " needs a " + std::string(to_string(expected)) +
                             " grid, got " + std::string(to_string(grid.spec.kind)));
    }
    const auto c = centroid(shape);
    if (std::abs(c.cx - grid.center.cx) > kAlignmentTolerance ||
        std::abs(c.cy - grid.center.cy) > kAlignmentTolerance) {
        throw MisalignmentError("grid center (" + std::to_string(grid.center.cx) + ", " +
                                std::to_string(grid.center.cy) + ") is not the centroid (" +
                                std::to_string(c.cx) + ", " + std::to_string(c.cy) + ") of shape '" +
                                shape.id() + "'");
    }
}

// Per-cycle counts over s samples; shared by the circular radial and the
// spiral full-cycle vectors.
std::vector<double> per_cycle(const BinaryShape& shape, const RasterGrid& grid) {
    const int s = grid.spec.samples_per_cycle;
    std::vector<int> counts(static_cast<std::size_t>(grid.n_cycles), 0);
    for (const auto& p : grid.points) {
        if (contains(shape, p.x, p.y)) ++counts[static_cast<std::size_t>(p.cycle_index)];
    }
    std::vector<double> values(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) values[k] = static_cast<double>(counts[k]) / s;
    return values;
}

std::vector<double> per_ray(const BinaryShape& shape, const RasterGrid& grid) {
    const int s = grid.spec.samples_per_cycle;
    std::vector<int> counts(static_cast<std::size_t>(s), 0);
    for (const auto& p : grid.points) {
        if (contains(shape, p.x, p.y)) ++counts[static_cast<std::size_t>(p.angle_index)];
    }
    std::vector<double> values(counts.size(), 0.0);
    if (grid.n_cycles == 0) return values;
    for (std::size_t j = 0; j < counts.size(); ++j) {
        values[j] = static_cast<double>(counts[j]) / grid.n_cycles;
    }
    return values;
}

std::vector<double> per_sample(const BinaryShape& shape, const RasterGrid& grid) {
    std::vector<double> values;
    values.reserve(grid.points.size());
    for (const auto& p : grid.points) values.push_back(contains(shape, p.x, p.y) ? 1.0 : 0.0);
    return values;
}

std::vector<double> compute(Variant variant, const BinaryShape& shape, const RasterGrid& grid) {
    switch (variant) {
    case Variant::circ_radial:
    case Variant::spiral_full: return per_cycle(shape, grid);
    case Variant::circ_angular: return per_ray(shape, grid);
    case Variant::spiral_fixed: return per_sample(shape, grid);
    }
    return {};
}

ShapeVector checked(Variant variant, const BinaryShape& shape, const RasterGrid& grid, const char* op) {
    check_inputs(shape, grid, raster_kind_of(variant), op);
    return {variant, grid.spec, compute(variant, shape, grid)};
}

}  // namespace

ShapeVector circular_radial_vector(const BinaryShape& shape, const RasterGrid& grid) {
    return checked(Variant::circ_radial, shape, grid, "circular_radial_vector");
}

ShapeVector angular_vector(const BinaryShape& shape, const RasterGrid& grid) {
    return checked(Variant::circ_angular, shape, grid, "angular_vector");
}

ShapeVector spiral_full_cycle_vector(const BinaryShape& shape, const RasterGrid& grid) {
    return checked(Variant::spiral_full, shape, grid, "spiral_full_cycle_vector");
}

ShapeVector spiral_fixed_angle_vector(const BinaryShape& shape, const RasterGrid& grid) {
    return checked(Variant::spiral_fixed, shape, grid, "spiral_fixed_angle_vector");
}

ShapeVector extract(const BinaryShape& shape, const RasterSpec& spec, Variant variant,
                    const ExtractOptions& options) {
    return extract(shape, measure(shape), spec, variant, options);
}

ShapeVector extract(const BinaryShape& shape, const ShapeGeometry& geometry, const RasterSpec& spec,
                    Variant variant, const ExtractOptions& options) {
    if (shape.empty()) throw EmptyShapeError("shape '" + shape.id() + "' has no shape pixels");
    if (spec.kind != raster_kind_of(variant)) {
        throw ParameterError("variant " + std::string(to_string(variant)) + " cannot use a " +
                             std::string(to_string(spec.kind)) + " raster");
    }
    spec.validate();

    RasterGrid grid;
    if (options.normalized_cycles) {
        const int n = *options.normalized_cycles;
        if (n < 1) throw ParameterError("normalized cycle count must be >= 1");
        const int steps = spec.kind == RasterKind::spiral && n > 1 ? n - 1 : n;
        const double sep = geometry.max_radius > 0.0 ? geometry.max_radius / steps : 1.0;
        grid = make_grid(geometry.center, spec, n, sep);
    } else {
        grid = make_grid(geometry.center, spec, cycle_count(spec, geometry.max_radius));
    }
    return {variant, spec, compute(variant, shape, grid)};
}

}  // namespace rastershape
