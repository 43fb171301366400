#include "rastershape/raster.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include "rastershape/error.hpp"

namespace rastershape {

std::string_view to_string(RasterKind kind) {
    return kind == RasterKind::circular ? "circular" : "spiral";
}

RasterKind parse_raster_kind(std::string_view text) {
    if (text == "circular") return RasterKind::circular;
    if (text == "spiral") return RasterKind::spiral;
    throw ParameterError("unknown raster kind '" + std::string(text) + "'");
}

void RasterSpec::validate() const {
    if (separation_px < 1) {
        throw ParameterError("separation must be >= 1 pixel, got " + std::to_string(separation_px));
    }
    if (samples_per_cycle < 1) {
        throw ParameterError("samples per cycle must be >= 1, got " + std::to_string(samples_per_cycle));
    }
}

std::string to_string(const RasterSpec& spec) {
    return std::string(to_string(spec.kind)) + " sep=" + std::to_string(spec.separation_px) +
           " samples=" + std::to_string(spec.samples_per_cycle);
}

Direction ray_direction(int j, int s) {
    // Reduce to an angle inside the first quadrant, then rotate by whole
    // quarter turns using exact swaps and negations.
    const long long num = 4LL * (((j % s) + s) % s);
    const int quadrant = static_cast<int>(num / s);
    const long long rem = num % s;
    // Values with a short exact form are pinned so samples that land exactly
    // on a half-pixel keep the tie-break of exact arithmetic.
    double c = 1.0;
    double sn = 0.0;
    if (rem == 0) {
    } else if (3 * rem == s) {
        c = std::sqrt(3.0) / 2.0;
        sn = 0.5;
    } else if (3 * rem == 2LL * s) {
        c = 0.5;
        sn = std::sqrt(3.0) / 2.0;
    } else if (2 * rem == s) {
        c = sn = std::sqrt(0.5);
    } else {
        // Reduced fraction: ray (m*j, m*s) must land on the same point as (j, s).
        const long long g = std::gcd(rem, static_cast<long long>(s));
        const double phi = (std::numbers::pi / 2.0) * static_cast<double>(rem / g) / static_cast<double>(s / g);
        c = std::cos(phi);
        sn = std::sin(phi);
    }
    switch (quadrant) {
    case 0: return {c, sn};
    case 1: return {-sn, c};
    case 2: return {-c, -sn};
    default: return {sn, -c};
    }
}

int cycle_count(const RasterSpec& spec, double max_radius) {
    spec.validate();
    if (!(max_radius >= 0.0)) throw ParameterError("max radius must be non-negative");
    const int circles = std::max(1, static_cast<int>(std::ceil(max_radius / spec.separation_px)));
    if (spec.kind == RasterKind::circular) return circles;
    return static_cast<int>(std::ceil(max_radius / spec.separation_px)) + 1;
}

namespace {

RasterGrid build(const Centroid& center, const RasterSpec& spec, int n_cycles, double separation) {
    spec.validate();
    if (n_cycles < 0) throw ParameterError("cycle count must be non-negative");
    if (!(separation > 0.0)) throw ParameterError("separation must be positive");

    const int s = spec.samples_per_cycle;
    RasterGrid grid{spec, center, n_cycles, separation, {}};
    grid.points.reserve(static_cast<std::size_t>(n_cycles) * static_cast<std::size_t>(s));

    std::vector<Direction> dirs(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) dirs[static_cast<std::size_t>(j)] = ray_direction(j, s);

    for (int k = 0; k < n_cycles; ++k) {
        for (int j = 0; j < s; ++j) {
            const double rho = spec.kind == RasterKind::circular
                                   ? (k + 1) * separation
                                   : separation * static_cast<double>(static_cast<long long>(k) * s + j) / s;
            const auto& dir = dirs[static_cast<std::size_t>(j)];
            // Image y grows downward.
            grid.points.push_back({center.cx + rho * dir.cos, center.cy - rho * dir.sin, k, j});
        }
    }
    return grid;
}

}  // namespace

RasterGrid circular_grid(const Centroid& center, const RasterSpec& spec, int n_cycles) {
    if (spec.kind != RasterKind::circular) throw ParameterError("circular_grid needs a circular spec");
    return build(center, spec, n_cycles, spec.separation_px);
}

RasterGrid spiral_grid(const Centroid& center, const RasterSpec& spec, int n_cycles) {
    if (spec.kind != RasterKind::spiral) throw ParameterError("spiral_grid needs a spiral spec");
    return build(center, spec, n_cycles, spec.separation_px);
}

RasterGrid make_grid(const Centroid& center, const RasterSpec& spec, int n_cycles) {
    return build(center, spec, n_cycles, spec.separation_px);
}

RasterGrid make_grid(const Centroid& center, const RasterSpec& spec, int n_cycles, double separation) {
    return build(center, spec, n_cycles, separation);
}

void write_grid_csv(const RasterGrid& grid, std::ostream& out) {
    out << "k,j,x,y\n";
    const auto old_precision = out.precision(17);
    for (const auto& p : grid.points) {
        out << p.cycle_index << ',' << p.angle_index << ',' << p.x << ',' << p.y << '\n';
    }
    out.precision(old_precision);
}

}  // namespace rastershape
