#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rastershape/shape_io.hpp"

namespace rastershape {

enum class RasterKind { circular, spiral };

std::string_view to_string(RasterKind kind);
RasterKind parse_raster_kind(std::string_view text);

/// Raster kind plus the two swept parameters: radial separation between
/// consecutive cycles (pixels) and equally spaced samples per cycle.
struct RasterSpec {
    RasterKind kind = RasterKind::circular;
    int separation_px = 8;
    int samples_per_cycle = 24;

    void validate() const;
    friend bool operator==(const RasterSpec&, const RasterSpec&) = default;
};

std::string to_string(const RasterSpec& spec);

struct SamplePoint {
    double x = 0.0;
    double y = 0.0;
    int cycle_index = 0;
    int angle_index = 0;
};

struct RasterGrid {
    RasterSpec spec;
    Centroid center;
    int n_cycles = 0;
    /// Radial step actually used; equals spec.separation_px except in
    /// normalized mode.
    double separation = 0.0;
    /// Emitted in (cycle, angle) lexicographic order.
    std::vector<SamplePoint> points;
};

/// Unit direction of ray `j` out of `s`, counter-clockwise from +x in math
/// convention. Quarter turns are exact: direction(j + s/4) is direction(j)
/// rotated by 90 degrees bit-for-bit.
struct Direction {
    double cos = 1.0;
    double sin = 0.0;
};
Direction ray_direction(int j, int s);

/// Circles: ceil(r / d), spiral turns: ceil(r / d) + 1; never less than 1.
int cycle_count(const RasterSpec& spec, double max_radius);

/// Circle k has radius (k + 1) * d.
RasterGrid circular_grid(const Centroid& center, const RasterSpec& spec, int n_cycles);

/// Archimedean spiral starting at the center: sample (k, j) sits at radius
/// d * (k + j / s) on ray j. Turn k spans radii [k*d, (k+1)*d).
RasterGrid spiral_grid(const Centroid& center, const RasterSpec& spec, int n_cycles);

/// Dispatches on spec.kind.
RasterGrid make_grid(const Centroid& center, const RasterSpec& spec, int n_cycles);

/// Same lattices with a real-valued separation; used by normalized mode.
RasterGrid make_grid(const Centroid& center, const RasterSpec& spec, int n_cycles,
                     double separation);

/// Debug dump, one "k,j,x,y" line per point after a header line.
void write_grid_csv(const RasterGrid& grid, std::ostream& out);

}  // namespace rastershape
