#include "rastershape/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "rastershape/error.hpp"

namespace rastershape::synthetic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// mt19937_64 is bit-exact across standard libraries, the distributions are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

private:
    std::mt19937_64 engine_;
};

template <typename Inside>
BinaryShape render(int width, int height, Inside inside, std::string id, std::string category) {
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            mask[static_cast<std::size_t>(y) * width + x] = inside(x, y) ? 1 : 0;
        }
    }
    return BinaryShape(width, height, std::move(mask), std::move(id), std::move(category));
}

struct Harmonic {
    int order;
    double amplitude;
    double phase;
};

struct CategoryModel {
    double radius;
    std::vector<Harmonic> harmonics;
    double hole = 0.0;  // inner boundary as a fraction of the outer one

    double profile(double phi) const {
        double r = 1.0;
        for (const auto& h : harmonics) r += h.amplitude * std::cos(h.order * phi + h.phase);
        return std::max(r, 0.25);
    }

    double peak() const {
        double r = 1.0;
        for (const auto& h : harmonics) r += h.amplitude;
        return r;
    }
};

CategoryModel make_category(Rng& rng, const CorpusOptions& options) {
    const double frame_scale = options.frame / 256.0;
    CategoryModel model;
    model.radius = rng.uniform(55.0, 85.0) * frame_scale;
    const int terms = rng.integer(1, 3);
    for (int t = 0; t < terms; ++t) {
        model.harmonics.push_back({rng.integer(2, 8), rng.uniform(options.min_amplitude, options.max_amplitude), rng.uniform(0.0, kTwoPi)});
    }
    if (rng.unit() < 0.25) model.hole = rng.uniform(0.25, 0.5);
    return model;
}

}  // namespace

BinaryShape disk(int width, int height, double cx, double cy, double radius, std::string id,
                 std::string category) {
    const double r2 = radius * radius;
    return render(
        width, height,
        [&](int x, int y) { return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r2; },
        std::move(id), std::move(category));
}

BinaryShape annulus(int width, int height, double cx, double cy, double inner, double outer,
                    std::string id, std::string category) {
    return render(
        width, height,
        [&](int x, int y) {
            const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
            return d2 >= inner * inner && d2 <= outer * outer;
        },
        std::move(id), std::move(category));
}

BinaryShape bar(int width, int height, double cx, double cy, double length, double thickness,
                double angle, std::string id, std::string category) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return render(
        width, height,
        [&](int x, int y) {
            const double dx = x - cx;
            const double dy = cy - y;
            const double along = dx * c + dy * s;
            const double across = -dx * s + dy * c;
            return std::abs(along) <= length / 2 && std::abs(across) <= thickness / 2;
        },
        std::move(id), std::move(category));
}

std::vector<BinaryShape> corpus(const CorpusOptions& options) {
    if (options.categories < 1 || options.per_category < 1 || options.frame < 32) {
        throw ParameterError("corpus needs >= 1 category, >= 1 member and a frame of at least 32 px");
    }
    Rng rng(options.seed);
    const double half = options.frame / 2.0;
    const double noise_peak = 1.0 + 3.0 * options.boundary_noise;

    std::vector<BinaryShape> shapes;
    shapes.reserve(static_cast<std::size_t>(options.categories) * options.per_category);
    for (int c = 0; c < options.categories; ++c) {
        auto model = make_category(rng, options);
        // Keep every instance inside the frame with a small margin.
        const double limit = (half - 4.0) / (model.peak() * (1.0 + options.scale_jitter) * noise_peak);
        model.radius = std::min(model.radius, limit * 0.85);

        char name[16];
        std::snprintf(name, sizeof name, "shape%02d", c + 1);
        for (int i = 0; i < options.per_category; ++i) {
            const double rotation = rng.uniform(0.0, kTwoPi);
            const double scale = 1.0 + options.scale_jitter * (2.0 * rng.unit() - 1.0);
            std::vector<Harmonic> wobble;
            for (int t = 0; t < 3; ++t) {
                wobble.push_back({rng.integer(9, 16), options.boundary_noise * rng.unit(), rng.uniform(0.0, kTwoPi)});
            }
            const double extent = model.radius * scale * model.peak() * noise_peak;
            const double slack = std::max(0.0, half - extent - 2.0);
            const double cx = half + rng.uniform(-slack, slack);
            const double cy = half + rng.uniform(-slack, slack);
            const double outer_scale = model.radius * scale;

            shapes.push_back(render(
                options.frame, options.frame,
                [&](int x, int y) {
                    const double dx = x - cx;
                    const double dy = cy - y;
                    if (dx * dx + dy * dy > extent * extent) return false;
                    const double rho = std::hypot(dx, dy);
                    const double phi = std::atan2(dy, dx);
                    double noise = 1.0;
                    for (const auto& h : wobble) noise += h.amplitude * std::cos(h.order * phi + h.phase);
                    const double boundary = outer_scale * model.profile(phi - rotation) * noise;
                    return rho <= boundary && rho >= model.hole * boundary;
                },
                std::string(name) + "-" + std::to_string(i + 1), name));
        }
    }
    return shapes;
}

std::vector<BinaryShape> toy_corpus(std::uint64_t seed) {
    Rng rng(seed);
    constexpr int kFrame = 160;
    std::vector<BinaryShape> shapes;
    for (int i = 0; i < 4; ++i) {
        const double cx = 80 + rng.uniform(-8, 8);
        const double cy = 80 + rng.uniform(-8, 8);
        const auto n = std::to_string(i + 1);
        shapes.push_back(disk(kFrame, kFrame, cx, cy, 50 + rng.uniform(-2, 2), "disk-" + n, "disk"));
    }
    for (int i = 0; i < 4; ++i) {
        const double cx = 80 + rng.uniform(-8, 8);
        const double cy = 80 + rng.uniform(-8, 8);
        const auto n = std::to_string(i + 1);
        shapes.push_back(bar(kFrame, kFrame, cx, cy, 110 + rng.uniform(-3, 3), 24, rng.uniform(0, kTwoPi),
                             "bar-" + n, "bar"));
    }
    for (int i = 0; i < 4; ++i) {
        const double cx = 80 + rng.uniform(-8, 8);
        const double cy = 80 + rng.uniform(-8, 8);
        const auto n = std::to_string(i + 1);
        shapes.push_back(annulus(kFrame, kFrame, cx, cy, 25, 55 + rng.uniform(-2, 2), "ring-" + n, "ring"));
    }
    return shapes;
}

BinaryShape random_blob(std::uint64_t seed, int width, int height) {
    Rng rng(seed);
    struct Disk {
        double x, y, r;
    };
    std::vector<Disk> disks;
    const int count = rng.integer(2, 5);
    for (int i = 0; i < count; ++i) {
        disks.push_back({rng.uniform(width * 0.3, width * 0.7), rng.uniform(height * 0.3, height * 0.7),
                         rng.uniform(3.0, std::min(width, height) * 0.25)});
    }
    return render(
        width, height,
        [&](int x, int y) {
            return std::any_of(disks.begin(), disks.end(), [&](const Disk& d) {
                return (x - d.x) * (x - d.x) + (y - d.y) * (y - d.y) <= d.r * d.r;
            });
        },
        "blob-" + std::to_string(seed), "blob");
}

}  // namespace rastershape::synthetic
