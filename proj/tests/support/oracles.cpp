#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rastershape::oracle {

std::vector<std::uint8_t> read_netpbm_mask(const std::vector<std::uint8_t>& bytes, int threshold,
                                           bool invert, int& width, int& height) {
    // Header tokens first; comments stripped line by line.
    std::size_t pos = 0;
    std::vector<std::string> tokens;
    const std::string magic(bytes.begin(), bytes.begin() + 2);
    pos = 2;
    const bool pbm = magic == "P1" || magic == "P4";
    const std::size_t need = pbm ? 2 : 3;
    while (tokens.size() < need) {
        const char c = static_cast<char>(bytes.at(pos));
        if (c == '#') {
            while (bytes.at(pos) != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            std::string tok;
            while (pos < bytes.size() && std::isdigit(bytes[pos])) tok += static_cast<char>(bytes[pos++]);
            tokens.push_back(tok);
        }
    }
    width = std::stoi(tokens[0]);
    height = std::stoi(tokens[1]);
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> mask;
    mask.reserve(n);

    if (magic == "P5" || magic == "P4") {
        ++pos;  // single whitespace
        if (magic == "P5") {
            for (std::size_t i = 0; i < n; ++i) mask.push_back((bytes.at(pos + i) > threshold) != invert);
        } else {
            const int stride = (width + 7) / 8;
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    const int bit = (bytes.at(pos + y * stride + x / 8) >> (7 - x % 8)) & 1;
                    mask.push_back((bit == 1) != invert);
                }
            }
        }
        return mask;
    }

    // Plain formats: strip comments, then read values.
    std::string rest(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    std::string clean;
    bool in_comment = false;
    for (char c : rest) {
        if (c == '#') in_comment = true;
        if (c == '\n') in_comment = false;
        if (!in_comment) clean += c;
    }
    if (magic == "P1") {
        for (char c : clean) {
            if (c == '0' || c == '1') mask.push_back(((c == '1') != invert) ? 1 : 0);
        }
    } else {
        std::istringstream in(clean);
        int v;
        while (mask.size() < n && in >> v) mask.push_back((v > threshold) != invert);
    }
    if (mask.size() != n) throw std::runtime_error("oracle: short raster");
    return mask;
}

bool member(const BinaryShape& shape, double x, double y) {
    const auto half_away = [](double v) { return v >= 0 ? std::floor(v + 0.5) : std::ceil(v - 0.5); };
    const double rx = half_away(x);
    const double ry = half_away(y);
    if (rx < 0 || ry < 0 || rx > shape.width() - 1 || ry > shape.height() - 1) return false;
    const auto idx = static_cast<std::size_t>(ry) * static_cast<std::size_t>(shape.width()) +
                     static_cast<std::size_t>(rx);
    return shape.mask()[idx] != 0;
}

std::vector<double> descriptor_from_grid(const BinaryShape& shape, const RasterGrid& grid, Variant variant) {
    const int n = grid.n_cycles;
    const int s = grid.spec.samples_per_cycle;
    std::vector<std::vector<int>> hit(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(s), 0));
    for (const auto& p : grid.points) hit[p.cycle_index][p.angle_index] = member(shape, p.x, p.y) ? 1 : 0;

    std::vector<double> out;
    switch (variant) {
    case Variant::circ_radial:
    case Variant::spiral_full:
        for (int k = 0; k < n; ++k) {
            int c = 0;
            for (int j = 0; j < s; ++j) c += hit[k][j];
            out.push_back(static_cast<double>(c) / s);
        }
        break;
    case Variant::circ_angular:
        for (int j = 0; j < s; ++j) {
            int c = 0;
            for (int k = 0; k < n; ++k) c += hit[k][j];
            out.push_back(n == 0 ? 0.0 : static_cast<double>(c) / n);
        }
        break;
    case Variant::spiral_fixed:
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < s; ++j) out.push_back(hit[k][j]);
        }
        break;
    }
    return out;
}

std::vector<double> extract_straight(const BinaryShape& shape, Variant variant, int separation, int samples) {
    // 1. centroid
    long long sx = 0, sy = 0, count = 0;
    for (int y = 0; y < shape.height(); ++y) {
        for (int x = 0; x < shape.width(); ++x) {
            if (shape.mask()[static_cast<std::size_t>(y) * shape.width() + x]) {
                sx += x;
                sy += y;
                ++count;
            }
        }
    }
    const double cx = static_cast<double>(sx) / static_cast<double>(count);
    const double cy = static_cast<double>(sy) / static_cast<double>(count);
    // 2. max radius
    double r = 0;
    for (int y = 0; y < shape.height(); ++y) {
        for (int x = 0; x < shape.width(); ++x) {
            if (shape.mask()[static_cast<std::size_t>(y) * shape.width() + x]) {
                r = std::max(r, std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy)));
            }
        }
    }
    // 3. cycle count
    const bool spiral = variant == Variant::spiral_full || variant == Variant::spiral_fixed;
    int n = 0;
    if (spiral) {
        while (n * separation < r) ++n;
        n += 1;
    } else {
        n = 1;
        while (n * separation < r) ++n;
    }
    // 4. grid, 5. aggregation
    RasterGrid grid;
    grid.spec = {spiral ? RasterKind::spiral : RasterKind::circular, separation, samples};
    grid.center = {cx, cy};
    grid.n_cycles = n;
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < samples; ++j) {
            const long double theta = 2.0L * std::numbers::pi_v<long double> * j / samples;
            const double c = static_cast<double>(std::cos(theta));
            const double sn = static_cast<double>(std::sin(theta));
            const double rho = spiral ? separation * (k + static_cast<double>(j) / samples)
                                      : static_cast<double>(separation) * (k + 1);
            grid.points.push_back({cx + rho * c, cy - rho * sn, k, j});
        }
    }
    return descriptor_from_grid(shape, grid, variant);
}

std::vector<Match> topk_full_sort(const DescriptorDatabase& db, const std::vector<double>& q, int k,
                                  const std::string& exclude_id) {
    struct Row {
        double d;
        std::size_t i;
    };
    std::vector<Row> rows;
    const auto& recs = db.records();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].id == exclude_id) continue;
        const auto& v = recs[i].vector.values;
        const std::size_t len = std::max(v.size(), q.size());
        double sum = 0;
        for (std::size_t t = 0; t < len; ++t) {
            const double a = t < v.size() ? v[t] : 0.0;
            const double b = t < q.size() ? q[t] : 0.0;
            sum += (a - b) * (a - b);
        }
        rows.push_back({std::sqrt(sum), i});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.d < b.d; });
    std::vector<Match> out;
    for (std::size_t t = 0; t < rows.size() && t < static_cast<std::size_t>(k); ++t) {
        out.push_back({recs[rows[t].i].id, recs[rows[t].i].category, rows[t].d});
    }
    return out;
}

BinaryShape rotate90(const BinaryShape& shape) {
    const int w = shape.width();
    if (w != shape.height()) throw std::invalid_argument("rotate90 needs a square frame");
    std::vector<std::uint8_t> out(shape.mask().size(), 0);
    for (int y = 0; y < w; ++y) {
        for (int x = 0; x < w; ++x) {
            if (shape.at(x, y)) out[static_cast<std::size_t>(w - 1 - x) * w + y] = 1;
        }
    }
    return BinaryShape(w, w, std::move(out), shape.id() + "-rot", shape.category());
}

BinaryShape translate(const BinaryShape& shape, int dx, int dy) {
    const int w = shape.width();
    const int h = shape.height();
    std::vector<std::uint8_t> out(shape.mask().size(), 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (shape.at(x, y) && nx >= 0 && ny >= 0 && nx < w && ny < h) {
                out[static_cast<std::size_t>(ny) * w + nx] = 1;
            }
        }
    }
    return BinaryShape(w, h, std::move(out), shape.id(), shape.category());
}

}  // namespace rastershape::oracle
