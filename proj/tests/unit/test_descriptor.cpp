#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rastershape/rastershape.hpp"

using namespace rastershape;

namespace {

const auto kDisk = synthetic::disk(301, 301, 150, 150, 100);
const auto kRing = synthetic::annulus(201, 201, 100, 100, 40, 80);

RasterGrid grid_for(const BinaryShape& shape, Variant v, int d, int s) {
    const auto spec = spec_for(v, d, s);
    const auto geo = measure(shape);
    return make_grid(geo.center, spec, cycle_count(spec, geo.max_radius));
}

std::vector<double> values(Variant v, const BinaryShape& shape, int d, int s) {
    return extract(shape, spec_for(v, d, s), v).values;
}

}  // namespace

TEST(Variant, Names) {
    for (auto v : {Variant::circ_radial, Variant::circ_angular, Variant::spiral_full, Variant::spiral_fixed}) {
        EXPECT_EQ(parse_variant(to_string(v)), v);
    }
    EXPECT_THROW(parse_variant("square_radial"), ParameterError);
    EXPECT_EQ(raster_kind_of(Variant::circ_angular), RasterKind::circular);
    EXPECT_EQ(raster_kind_of(Variant::spiral_fixed), RasterKind::spiral);
}

TEST(CircularRadial, DiskAndAnnulus) {
    EXPECT_EQ(max_radius(kDisk, centroid(kDisk)), 100.0);
    const auto disk = circular_radial_vector(kDisk, grid_for(kDisk, Variant::circ_radial, 32, 4));
    EXPECT_EQ(disk.values, (std::vector<double>{1, 1, 1, 0}));
    const auto ring = circular_radial_vector(kRing, grid_for(kRing, Variant::circ_radial, 32, 8));
    EXPECT_EQ(ring.values, (std::vector<double>{0, 1, 0}));
}

TEST(Angular, DiskAndFullCoverage) {
    const auto disk = angular_vector(kDisk, grid_for(kDisk, Variant::circ_angular, 32, 4));
    EXPECT_EQ(disk.values, (std::vector<double>{0.75, 0.75, 0.75, 0.75}));

    // Every sample lands on a shape pixel.
    std::vector<std::uint8_t> full(200 * 200, 1);
    const BinaryShape filled(200, 200, full);
    const auto g = make_grid(centroid(filled), spec_for(Variant::circ_angular, 8, 6), 5);
    EXPECT_EQ(angular_vector(filled, g).values, std::vector<double>(6, 1.0));
}

TEST(SpiralFull, DiskAndSinglePixel) {
    const auto disk = spiral_full_cycle_vector(kDisk, grid_for(kDisk, Variant::spiral_full, 32, 4));
    EXPECT_EQ(disk.values, (std::vector<double>{1, 1, 1, 0.25, 0}));

    std::vector<std::uint8_t> mask(9 * 9, 0);
    mask[4 * 9 + 4] = 1;
    const BinaryShape dot(9, 9, mask);
    for (int s : {4, 6, 24}) {
        const auto v = values(Variant::spiral_full, dot, 32, s);
        ASSERT_EQ(v.size(), 1u);
        EXPECT_EQ(v[0], 1.0 / s);
    }
}

TEST(SpiralFixed, DiskSequence) {
    const auto v = spiral_fixed_angle_vector(kDisk, grid_for(kDisk, Variant::spiral_fixed, 32, 4)).values;
    std::vector<double> want(12, 1.0);
    want.insert(want.end(), {1, 0, 0, 0, 0, 0, 0, 0});
    EXPECT_EQ(v, want);
}

TEST(Descriptors, ErrorPaths) {
    const BinaryShape empty(5, 5, std::vector<std::uint8_t>(25, 0));
    EXPECT_THROW(extract(empty, spec_for(Variant::circ_radial, 8, 4), Variant::circ_radial), EmptyShapeError);
    EXPECT_THROW(circular_radial_vector(empty, circular_grid({2, 2}, {RasterKind::circular, 8, 4}, 1)),
                 EmptyShapeError);

    auto g = grid_for(kDisk, Variant::circ_radial, 32, 4);
    g.center.cx += 1e-3;
    EXPECT_THROW(circular_radial_vector(kDisk, g), MisalignmentError);
    EXPECT_THROW(spiral_full_cycle_vector(kDisk, grid_for(kDisk, Variant::circ_radial, 32, 4)), ParameterError);
    EXPECT_THROW(extract(kDisk, spec_for(Variant::spiral_full, 8, 4), Variant::circ_radial), ParameterError);
}

TEST(Descriptors, OracleEquivalenceOnRandomBlobs) {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        const auto blob = synthetic::random_blob(seed);
        for (auto v : {Variant::circ_radial, Variant::circ_angular, Variant::spiral_full, Variant::spiral_fixed}) {
            for (int d : {8, 16}) {
                for (int s : {6, 12}) {
                    const auto g = grid_for(blob, v, d, s);
                    const auto got = extract(blob, spec_for(v, d, s), v).values;
                    ASSERT_EQ(got, oracle::descriptor_from_grid(blob, g, v)) << seed << " " << to_string(v);
                    ASSERT_EQ(got, oracle::extract_straight(blob, v, d, s)) << seed << " " << to_string(v);
                }
            }
        }
    }
}

TEST(Descriptors, LengthsAndRange) {
    const auto blob = synthetic::random_blob(7);
    const auto geo = measure(blob);
    for (auto v : {Variant::circ_radial, Variant::circ_angular, Variant::spiral_full, Variant::spiral_fixed}) {
        const auto spec = spec_for(v, 8, 12);
        const int n = cycle_count(spec, geo.max_radius);
        const auto vec = extract(blob, spec, v);
        const std::size_t want = v == Variant::circ_angular  ? 12u
                                 : v == Variant::spiral_fixed ? static_cast<std::size_t>(n) * 12
                                                              : static_cast<std::size_t>(n);
        EXPECT_EQ(vec.values.size(), want);
        for (double x : vec.values) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
        EXPECT_EQ(vec, extract(blob, spec, v));
    }
}

TEST(Descriptors, CountingAndAggregationIdentities) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto blob = synthetic::random_blob(seed);
        for (int s : {4, 6, 24}) {
            const auto radial = values(Variant::circ_radial, blob, 8, s);
            const auto angular = values(Variant::circ_angular, blob, 8, s);
            const auto n = static_cast<double>(radial.size());
            const double a = s * std::accumulate(radial.begin(), radial.end(), 0.0);
            const double b = n * std::accumulate(angular.begin(), angular.end(), 0.0);
            EXPECT_EQ(std::llround(a), std::llround(b));
            EXPECT_NEAR(a, b, 1e-9);

            const auto full = values(Variant::spiral_full, blob, 8, s);
            const auto fixed = values(Variant::spiral_fixed, blob, 8, s);
            ASSERT_EQ(fixed.size(), full.size() * s);
            for (std::size_t k = 0; k < full.size(); ++k) {
                int count = 0;
                for (int j = 0; j < s; ++j) count += static_cast<int>(fixed[k * s + j]);
                EXPECT_EQ(static_cast<double>(count) / s, full[k]);
            }
        }
    }
}

TEST(Descriptors, TranslationInvariance) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto blob = synthetic::random_blob(seed, 120, 120);
        const auto moved = oracle::translate(blob, static_cast<int>(seed % 9) - 4, 3 - static_cast<int>(seed % 5));
        ASSERT_EQ(moved.pixel_count(), blob.pixel_count());
        for (auto v : {Variant::circ_radial, Variant::circ_angular, Variant::spiral_full, Variant::spiral_fixed}) {
            EXPECT_EQ(values(v, blob, 8, 24), values(v, moved, 8, 24)) << seed << " " << to_string(v);
        }
    }
}

TEST(Descriptors, QuarterTurnRotation) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto blob = synthetic::random_blob(seed, 101, 101);
        const auto c = centroid(blob);
        ASSERT_NE(c.cx - std::floor(c.cx), 0.5);
        ASSERT_NE(c.cy - std::floor(c.cy), 0.5);
        const auto rot = oracle::rotate90(blob);
        for (int s : {4, 8, 24}) {
            EXPECT_EQ(values(Variant::circ_radial, blob, 8, s), values(Variant::circ_radial, rot, 8, s));
            const auto a = values(Variant::circ_angular, blob, 8, s);
            const auto b = values(Variant::circ_angular, rot, 8, s);
            for (int j = 0; j < s; ++j) EXPECT_EQ(b[static_cast<std::size_t>((j + s / 4) % s)], a[j]);
        }
    }
}

TEST(Descriptors, NormalizedModeIsScaleAware) {
    const auto small = synthetic::disk(201, 201, 100, 100, 40);
    const auto large = synthetic::disk(201, 201, 100, 100, 80);
    ExtractOptions opts;
    opts.normalized_cycles = 5;
    for (auto v : {Variant::circ_radial, Variant::spiral_full}) {
        const auto spec = spec_for(v, 8, 12);
        const auto a = extract(small, spec, v, opts).values;
        const auto b = extract(large, spec, v, opts).values;
        ASSERT_EQ(a.size(), 5u);
        ASSERT_EQ(b.size(), 5u);
        for (std::size_t k = 0; k < 3; ++k) {
            EXPECT_EQ(a[k], 1.0);
            EXPECT_EQ(b[k], 1.0);
        }
        EXPECT_NE(extract(small, spec, v).values.size(), extract(large, spec, v).values.size());
    }
    opts.normalized_cycles = 0;
    EXPECT_THROW(extract(small, spec_for(Variant::circ_radial, 8, 4), Variant::circ_radial, opts), ParameterError);
}
