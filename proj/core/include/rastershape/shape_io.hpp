#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rastershape {

/// A binary pixel mask (true = shape pixel) with an identity and a category
/// label. Immutable after construction.
class BinaryShape {
public:
    BinaryShape(int width, int height, std::vector<std::uint8_t> mask, std::string id = {},
                std::string category = {});

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    const std::string& id() const noexcept { return id_; }
    const std::string& category() const noexcept { return category_; }

    /// Row-major, one byte per pixel, 0 or 1.
    std::span<const std::uint8_t> mask() const noexcept { return mask_; }

    bool at(int x, int y) const noexcept {
        return mask_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                     static_cast<std::size_t>(x)] != 0;
    }

    std::size_t pixel_count() const noexcept { return pixel_count_; }
    bool empty() const noexcept { return pixel_count_ == 0; }

    BinaryShape with_identity(std::string id, std::string category) const;

    friend bool operator==(const BinaryShape& a, const BinaryShape& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.mask_ == b.mask_;
    }

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> mask_;
    std::string id_;
    std::string category_;
    std::size_t pixel_count_ = 0;
};

struct Centroid {
    double cx = 0.0;
    double cy = 0.0;
};

/// Centroid and farthest-pixel distance, the two quantities that anchor and
/// bound a raster.
struct ShapeGeometry {
    Centroid center;
    double max_radius = 0.0;
};

struct LoadOptions {
    int threshold = 127;
    bool invert = false;
};

BinaryShape load_image(const std::filesystem::path& path, const LoadOptions& options = {});

/// Parses an in-memory PBM/PGM file. `id`/`category` are attached verbatim.
BinaryShape decode_netpbm(std::span<const std::uint8_t> bytes, const LoadOptions& options,
                          std::string id = {}, std::string category = {});

/// MPEG-7 naming: "apple-3" -> "apple". A stem without '-' is its own category.
std::string category_from_stem(const std::string& stem);

/// Writes the mask as binary PGM (shape = 255, background = 0).
void write_pgm(const BinaryShape& shape, const std::filesystem::path& path);
/// Writes the mask as binary PBM (shape = 1).
void write_pbm(const BinaryShape& shape, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_pgm(const BinaryShape& shape);
std::vector<std::uint8_t> encode_pbm(const BinaryShape& shape);

/// Loads every .pbm/.pgm file in `dir` (non-recursive), ordered by file name.
std::vector<BinaryShape> load_dataset(const std::filesystem::path& dir,
                                      const LoadOptions& options = {});

Centroid centroid(const BinaryShape& shape);
double max_radius(const BinaryShape& shape, const Centroid& c);
ShapeGeometry measure(const BinaryShape& shape);

/// Nearest-pixel membership, rounding half away from zero. Points outside the
/// frame are background.
bool contains(const BinaryShape& shape, double x, double y) noexcept;

/// Erases the part of the shape beyond a seeded straight cut so that as close
/// as possible to ceil(fraction * N) of the N shape pixels disappear. At least
/// one pixel always survives. The result id gets an "-occ" suffix.
BinaryShape occlude(const BinaryShape& shape, double fraction, std::uint64_t seed);

}  // namespace rastershape
