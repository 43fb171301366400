#include "rastershape/shape_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

#include "rastershape/error.hpp"

namespace rastershape {

BinaryShape::BinaryShape(int width, int height, std::vector<std::uint8_t> mask, std::string id,
                         std::string category)
    : width_(width), height_(height), mask_(std::move(mask)), id_(std::move(id)),
      category_(std::move(category)) {
    if (width < 1 || height < 1) {
        throw ParameterError("shape dimensions must be positive, got " + std::to_string(width) +
                             "x" + std::to_string(height));
    }
    if (mask_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ParameterError("mask has " + std::to_string(mask_.size()) + " entries, expected " +
                             std::to_string(static_cast<std::size_t>(width) * height));
    }
    for (auto& v : mask_) {
        v = v != 0 ? 1 : 0;
        pixel_count_ += v;
    }
}

BinaryShape BinaryShape::with_identity(std::string id, std::string category) const {
    BinaryShape copy = *this;
    copy.id_ = std::move(id);
    copy.category_ = std::move(category);
    return copy;
}

namespace {

class NetpbmReader {
public:
    explicit NetpbmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool at_end() const { return pos_ >= bytes_.size(); }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(c)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        if (at_end() || !std::isdigit(bytes_[pos_])) {
            throw FormatError(std::string("malformed netpbm header: expected ") + what);
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > (1L << 30)) throw FormatError(std::string("netpbm ") + what + " too large");
            ++pos_;
        }
        return value;
    }

    // Plain PBM allows bits without separating whitespace.
    int read_bit() {
        skip_space_and_comments();
        if (at_end()) throw FormatError("truncated plain PBM raster");
        const auto c = bytes_[pos_++];
        if (c != '0' && c != '1') throw FormatError("invalid character in plain PBM raster");
        return c - '0';
    }

    // Exactly one whitespace byte separates the header from a binary raster.
    void consume_single_whitespace() {
        if (at_end() || !std::isspace(bytes_[pos_])) {
            throw FormatError("malformed netpbm header: missing whitespace before raster");
        }
        ++pos_;
    }

    std::span<const std::uint8_t> take(std::size_t n) {
        if (bytes_.size() - pos_ < n) throw FormatError("truncated netpbm raster");
        auto out = bytes_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    std::uint8_t byte(std::size_t i) const { return bytes_[i]; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::string describe_magic(std::span<const std::uint8_t> bytes) {
    std::ostringstream os;
    os << "unsupported image format, magic bytes:";
    for (std::size_t i = 0; i < std::min<std::size_t>(2, bytes.size()); ++i) {
        const auto c = bytes[i];
        if (std::isprint(c)) {
            os << " '" << static_cast<char>(c) << "'";
        } else {
            os << " 0x" << std::hex << static_cast<int>(c) << std::dec;
        }
    }
    if (bytes.empty()) os << " <empty file>";
    return os.str();
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read image file '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write image file '" + path.string() + "'", false);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError("failed writing '" + path.string() + "'", false);
}

bool has_netpbm_extension(const std::filesystem::path& p) {
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pbm" || ext == ".pgm";
}

}  // namespace

BinaryShape decode_netpbm(std::span<const std::uint8_t> bytes, const LoadOptions& options,
                          std::string id, std::string category) {
    if (bytes.size() < 2 || bytes[0] != 'P' ||
        (bytes[1] != '1' && bytes[1] != '2' && bytes[1] != '4' && bytes[1] != '5')) {
        throw FormatError(describe_magic(bytes));
    }
    const char kind = static_cast<char>(bytes[1]);
    const bool is_pbm = kind == '1' || kind == '4';

    NetpbmReader reader(bytes.subspan(2));
    const long width = reader.read_uint("width");
    const long height = reader.read_uint("height");
    if (width < 1 || height < 1) throw FormatError("netpbm image has zero width or height");
    long maxval = 1;
    if (!is_pbm) {
        maxval = reader.read_uint("maxval");
        if (maxval < 1 || maxval > 255) {
            throw FormatError("unsupported PGM maxval " + std::to_string(maxval) + " (1..255 allowed)");
        }
    }

    const auto w = static_cast<std::size_t>(width);
    const auto h = static_cast<std::size_t>(height);
    std::vector<std::uint8_t> mask(w * h);
    const auto classify_gray = [&](long value) -> std::uint8_t {
        if (value > maxval) throw FormatError("PGM sample exceeds maxval");
        return static_cast<std::uint8_t>((value > options.threshold) != options.invert);
    };
    const auto classify_bit = [&](int bit) -> std::uint8_t {
        return static_cast<std::uint8_t>((bit == 1) != options.invert);
    };

    switch (kind) {
    case '1':
        for (auto& m : mask) m = classify_bit(reader.read_bit());
        break;
    case '2':
        for (auto& m : mask) m = classify_gray(reader.read_uint("gray sample"));
        break;
    case '4': {
        reader.consume_single_whitespace();
        const std::size_t row_bytes = (w + 7) / 8;
        const auto raster = reader.take(row_bytes * h);
        for (std::size_t y = 0; y < h; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                const auto b = raster[y * row_bytes + x / 8];
                mask[y * w + x] = classify_bit((b >> (7 - x % 8)) & 1);
            }
        }
        break;
    }
    case '5': {
        reader.consume_single_whitespace();
        const auto raster = reader.take(w * h);
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = classify_gray(raster[i]);
        break;
    }
    }
    return BinaryShape(static_cast<int>(width), static_cast<int>(height), std::move(mask),
                       std::move(id), std::move(category));
}

std::string category_from_stem(const std::string& stem) {
    const auto dash = stem.rfind('-');
    return dash == std::string::npos ? stem : stem.substr(0, dash);
}

BinaryShape load_image(const std::filesystem::path& path, const LoadOptions& options) {
    if (options.threshold < 0 || options.threshold > 255) {
        throw ParameterError("threshold must lie in [0,255], got " + std::to_string(options.threshold));
    }
    const auto bytes = read_file(path);
    const auto stem = path.stem().string();
    try {
        return decode_netpbm(bytes, options, stem, category_from_stem(stem));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_pgm(const BinaryShape& shape) {
    const std::string header =
        "P5\n" + std::to_string(shape.width()) + " " + std::to_string(shape.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + shape.mask().size());
    for (const auto v : shape.mask()) out.push_back(v ? 255 : 0);
    return out;
}

std::vector<std::uint8_t> encode_pbm(const BinaryShape& shape) {
    const std::string header =
        "P4\n" + std::to_string(shape.width()) + " " + std::to_string(shape.height()) + "\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    const auto w = static_cast<std::size_t>(shape.width());
    const std::size_t row_bytes = (w + 7) / 8;
    for (int y = 0; y < shape.height(); ++y) {
        std::vector<std::uint8_t> row(row_bytes, 0);
        for (std::size_t x = 0; x < w; ++x) {
            if (shape.at(static_cast<int>(x), y)) row[x / 8] |= static_cast<std::uint8_t>(0x80u >> (x % 8));
        }
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

void write_pgm(const BinaryShape& shape, const std::filesystem::path& path) {
    write_file(path, encode_pgm(shape));
}

void write_pbm(const BinaryShape& shape, const std::filesystem::path& path) {
    write_file(path, encode_pbm(shape));
}

std::vector<BinaryShape> load_dataset(const std::filesystem::path& dir, const LoadOptions& options) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw DatasetError("'" + dir.string() + "' is not a directory");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && has_netpbm_extension(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

    std::vector<BinaryShape> shapes;
    shapes.reserve(files.size());
    for (const auto& f : files) shapes.push_back(load_image(f, options));
    return shapes;
}

Centroid centroid(const BinaryShape& shape) {
    if (shape.empty()) throw EmptyShapeError("shape '" + shape.id() + "' has no shape pixels");
    // Integer sums keep the mean exact up to the final division.
    std::uint64_t sx = 0;
    std::uint64_t sy = 0;
    for (int y = 0; y < shape.height(); ++y) {
        for (int x = 0; x < shape.width(); ++x) {
            if (shape.at(x, y)) {
                sx += static_cast<std::uint64_t>(x);
                sy += static_cast<std::uint64_t>(y);
            }
        }
    }
    const auto n = static_cast<double>(shape.pixel_count());
    return {static_cast<double>(sx) / n, static_cast<double>(sy) / n};
}

double max_radius(const BinaryShape& shape, const Centroid& c) {
    if (shape.empty()) throw EmptyShapeError("shape '" + shape.id() + "' has no shape pixels");
    double best_sq = 0.0;
    for (int y = 0; y < shape.height(); ++y) {
        for (int x = 0; x < shape.width(); ++x) {
            if (!shape.at(x, y)) continue;
            const double dx = x - c.cx;
            const double dy = y - c.cy;
            best_sq = std::max(best_sq, dx * dx + dy * dy);
        }
    }
    return std::sqrt(best_sq);
}

ShapeGeometry measure(const BinaryShape& shape) {
    const auto c = centroid(shape);
    return {c, max_radius(shape, c)};
}

bool contains(const BinaryShape& shape, double x, double y) noexcept {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    // Reject far-away points before converting to an integer type.
    if (x < -1.0 || y < -1.0 || x > shape.width() || y > shape.height()) return false;
    const long px = std::lround(x);
    const long py = std::lround(y);
    if (px < 0 || py < 0 || px >= shape.width() || py >= shape.height()) return false;
    return shape.at(static_cast<int>(px), static_cast<int>(py));
}

BinaryShape occlude(const BinaryShape& shape, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw ParameterError("occlusion fraction must lie in [0,1), got " + std::to_string(fraction));
    }
    if (shape.empty()) throw EmptyShapeError("shape '" + shape.id() + "' has no shape pixels");

    // Portable draw: mt19937_64 output is fixed by the standard, distributions are not.
    std::mt19937_64 rng(seed);
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double angle = 2.0 * std::numbers::pi * unit;
    const double ux = std::cos(angle);
    const double uy = std::sin(angle);
    const auto c = centroid(shape);

    struct Projected {
        double value;
        std::size_t index;
    };
    std::vector<Projected> proj;
    proj.reserve(shape.pixel_count());
    const auto w = static_cast<std::size_t>(shape.width());
    for (int y = 0; y < shape.height(); ++y) {
        for (int x = 0; x < shape.width(); ++x) {
            if (shape.at(x, y)) {
                proj.push_back({(x - c.cx) * ux + (y - c.cy) * uy, static_cast<std::size_t>(y) * w + x});
            }
        }
    }
    std::sort(proj.begin(), proj.end(), [](const Projected& a, const Projected& b) {
        return a.value > b.value || (a.value == b.value && a.index < b.index);
    });

    const std::size_t n = proj.size();
    const auto raw_target = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    const std::size_t target = std::min(raw_target, n - 1);

    // A straight cut can only erase a prefix ending between distinct projections.
    std::size_t best = 0;
    std::size_t best_gap = target;
    for (std::size_t m = 1; m < n; ++m) {
        if (proj[m - 1].value == proj[m].value) continue;
        const std::size_t gap = m > target ? m - target : target - m;
        if (gap < best_gap) {
            best = m;
            best_gap = gap;
        }
        if (m > target) break;
    }

    std::vector<std::uint8_t> mask(shape.mask().begin(), shape.mask().end());
    for (std::size_t i = 0; i < best; ++i) mask[proj[i].index] = 0;
    return BinaryShape(shape.width(), shape.height(), std::move(mask), shape.id() + "-occ",
                       shape.category());
}

}  // namespace rastershape
