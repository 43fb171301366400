#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rastershape/shape_io.hpp"

namespace rastershape::synthetic {

/// Pixels whose center lies within `radius` of (cx, cy).
BinaryShape disk(int width, int height, double cx, double cy, double radius, std::string id = "disk",
                 std::string category = "disk");

/// Pixels with inner <= distance <= outer from (cx, cy).
BinaryShape annulus(int width, int height, double cx, double cy, double inner, double outer,
                    std::string id = "ring", std::string category = "ring");

/// Filled rectangle of size length x thickness centered at (cx, cy), rotated
/// counter-clockwise by `angle` radians.
BinaryShape bar(int width, int height, double cx, double cy, double length, double thickness,
                double angle, std::string id = "bar", std::string category = "bar");

struct CorpusOptions {
    int categories = 23;
    int per_category = 20;
    int frame = 512;
    std::uint64_t seed = 2013;
    /// Relative jitter applied to each instance's size.
    double scale_jitter = 0.06;
    /// Relative amplitude of the random high-frequency boundary wobble.
    double boundary_noise = 0.03;
    /// Range of the per-category harmonic amplitudes (relative to the radius).
    double min_amplitude = 0.08;
    double max_amplitude = 0.35;
};

/// Star-shaped categories defined by a few radial harmonics (some with a
/// central hole). Each instance is randomly rotated, rescaled, translated and
/// given boundary noise. Ids follow the "<category>-<n>" convention, n from 1.
std::vector<BinaryShape> corpus(const CorpusOptions& options = {});

/// Three categories (disk, bar, ring) with four rotated/translated members each.
std::vector<BinaryShape> toy_corpus(std::uint64_t seed = 7);

/// Uniformly random blob mask: union of a few random disks, for property tests.
BinaryShape random_blob(std::uint64_t seed, int width = 96, int height = 96);

}  // namespace rastershape::synthetic
