#include "rastershape/matcher.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "rastershape/error.hpp"

namespace rastershape {

namespace {

bool has_reserved_chars(const std::string& s) {
    return s.find_first_of("\t\r\n") != std::string::npos;
}

void require_compatible(const ShapeVector& a, const ShapeVector& b) {
    if (a.variant != b.variant || !(a.spec == b.spec)) {
        throw IncompatibleError("cannot compare " + std::string(to_string(a.variant)) + " [" +
                                to_string(a.spec) + "] with " + std::string(to_string(b.variant)) +
                                " [" + to_string(b.spec) + "]");
    }
}

double unchecked_distance(const std::vector<double>& a, const std::vector<double>& b) {
    const auto& longer = a.size() >= b.size() ? a : b;
    const auto& shorter = a.size() >= b.size() ? b : a;
    double sum = 0.0;
    std::size_t i = 0;
    for (; i < shorter.size(); ++i) {
        const double d = longer[i] - shorter[i];
        sum += d * d;
    }
    for (; i < longer.size(); ++i) sum += longer[i] * longer[i];
    return std::sqrt(sum);
}

}  // namespace

DescriptorDatabase::DescriptorDatabase(RasterSpec spec, Variant variant) : spec_(spec), variant_(variant) {
    spec_.validate();
    if (spec_.kind != raster_kind_of(variant_)) {
        throw ParameterError("variant " + std::string(to_string(variant_)) + " cannot use a " +
                             std::string(to_string(spec_.kind)) + " raster");
    }
}

void DescriptorDatabase::add(DescriptorRecord record) {
    if (record.vector.variant != variant_ || !(record.vector.spec == spec_)) {
        throw IncompatibleError("record '" + record.id + "' was built as " +
                                std::string(to_string(record.vector.variant)) + " [" +
                                to_string(record.vector.spec) + "], database holds " +
                                std::string(to_string(variant_)) + " [" + to_string(spec_) + "]");
    }
    if (record.id.empty() || has_reserved_chars(record.id) || has_reserved_chars(record.category)) {
        throw ParameterError("record id/category must be non-empty and free of tabs and newlines");
    }
    // Linear scan keeps the class trivially comparable; databases stay small.
    for (const auto& r : records_) {
        if (r.id == record.id) throw ParameterError("duplicate record id '" + record.id + "'");
    }
    records_.push_back(std::move(record));
}

double distance(const ShapeVector& a, const ShapeVector& b) {
    require_compatible(a, b);
    return unchecked_distance(a.values, b.values);
}

std::vector<Match> query(const DescriptorDatabase& db, const ShapeVector& q, int k,
                         const std::optional<std::string>& exclude_id) {
    if (k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(k));
    if (q.variant != db.variant() || !(q.spec == db.spec())) {
        throw IncompatibleError("query built as " + std::string(to_string(q.variant)) + " [" +
                                to_string(q.spec) + "] but database holds " +
                                std::string(to_string(db.variant())) + " [" + to_string(db.spec()) + "]");
    }

    struct Scored {
        double distance;
        std::size_t index;
    };
    std::vector<Scored> scored;
    scored.reserve(db.size());
    const auto& records = db.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (exclude_id && records[i].id == *exclude_id) continue;
        scored.push_back({unchecked_distance(q.values, records[i].vector.values), i});
    }
    if (scored.empty()) throw EmptyDatabaseError("no database records left to match against");

    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                      [](const Scored& a, const Scored& b) {
                          return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
                      });

    std::vector<Match> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        const auto& r = records[scored[i].index];
        out.push_back({r.id, r.category, scored[i].distance});
    }
    return out;
}

void save(const DescriptorDatabase& db, std::ostream& out) {
    out << "RASTERDB v1 kind=" << to_string(db.spec().kind) << " variant=" << to_string(db.variant())
        << " sep=" << db.spec().separation_px << " samples=" << db.spec().samples_per_cycle << '\n';
    char buf[64];
    for (const auto& r : db.records()) {
        out << r.id << '\t' << r.category << '\t' << r.vector.values.size() << '\t';
        for (std::size_t i = 0; i < r.vector.values.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof buf, "%.6f", r.vector.values[i]);
            out << buf;
        }
        out << '\n';
    }
}

void save(const DescriptorDatabase& db, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path.string() + "' for writing", false);
    save(db, out);
    if (!out) throw FormatError("failed writing '" + path.string() + "'", false);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string field_value(const std::string& token, const std::string& key) {
    const auto prefix = key + "=";
    if (token.rfind(prefix, 0) != 0) {
        throw FormatError("malformed RASTERDB header: expected '" + prefix + "...', got '" + token + "'");
    }
    return token.substr(prefix.size());
}

template <typename T>
T parse_number(const std::string& text, const std::string& what, std::size_t line_no) {
    T value{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw FormatError("line " + std::to_string(line_no) + ": invalid " + what + " '" + text + "'");
    }
    return value;
}

}  // namespace

DescriptorDatabase load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw FormatError("empty descriptor database file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const auto tokens = split(header, ' ');
    if (tokens.size() < 2 || tokens[0] != "RASTERDB") {
        throw FormatError("not a RASTERDB file (header '" + header.substr(0, 40) + "')");
    }
    if (tokens[1] != "v1") {
        throw VersionError("unsupported RASTERDB version '" + tokens[1] + "' (this build reads v1)");
    }
    if (tokens.size() != 6) throw FormatError("malformed RASTERDB v1 header '" + header + "'");

    RasterSpec spec;
    Variant variant;
    try {
        spec.kind = parse_raster_kind(field_value(tokens[2], "kind"));
        variant = parse_variant(field_value(tokens[3], "variant"));
    } catch (const ParameterError& e) {
        throw FormatError(std::string("RASTERDB header: ") + e.what());
    }
    spec.separation_px = parse_number<int>(field_value(tokens[4], "sep"), "separation", 1);
    spec.samples_per_cycle = parse_number<int>(field_value(tokens[5], "samples"), "samples", 1);

    DescriptorDatabase db = [&] {
        try {
            return DescriptorDatabase(spec, variant);
        } catch (const ParameterError& e) {
            throw FormatError(std::string("RASTERDB header: ") + e.what());
        }
    }();

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 4) {
            throw FormatError("line " + std::to_string(line_no) + ": expected 4 tab-separated fields");
        }
        const auto len = parse_number<std::size_t>(fields[2], "length", line_no);
        const auto parts = split(fields[3], ',');
        if (parts.size() != len) {
            throw FormatError("line " + std::to_string(line_no) + ": declared length " +
                              std::to_string(len) + " but found " + std::to_string(parts.size()) +
                              " values");
        }
        ShapeVector v{variant, spec, {}};
        v.values.reserve(len);
        for (const auto& p : parts) v.values.push_back(parse_number<double>(p, "value", line_no));
        try {
            db.add({fields[0], fields[1], std::move(v)});
        } catch (const ParameterError& e) {
            throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return db;
}

DescriptorDatabase load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read descriptor database '" + path.string() + "'");
    return load(in);
}

}  // namespace rastershape
