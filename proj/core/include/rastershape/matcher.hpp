#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rastershape/descriptor.hpp"

namespace rastershape {

struct DescriptorRecord {
    std::string id;
    std::string category;
    ShapeVector vector;

    friend bool operator==(const DescriptorRecord&, const DescriptorRecord&) = default;
};

struct Match {
    std::string id;
    std::string category;
    double distance = 0.0;
};

/// Labeled descriptors that all share one raster spec and variant. Ids are
/// unique; records keep insertion order, which is also the tie-break order
/// for queries.
class DescriptorDatabase {
public:
    DescriptorDatabase(RasterSpec spec, Variant variant);

    const RasterSpec& spec() const noexcept { return spec_; }
    Variant variant() const noexcept { return variant_; }
    const std::vector<DescriptorRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    void add(DescriptorRecord record);
    void reserve(std::size_t n) { records_.reserve(n); }

    friend bool operator==(const DescriptorDatabase&, const DescriptorDatabase&) = default;

private:
    RasterSpec spec_;
    Variant variant_;
    std::vector<DescriptorRecord> records_;
};

/// Euclidean distance with the shorter sequence zero-padded.
double distance(const ShapeVector& a, const ShapeVector& b);

/// The k nearest records, ascending by distance, ties by insertion order.
std::vector<Match> query(const DescriptorDatabase& db, const ShapeVector& q, int k,
                         const std::optional<std::string>& exclude_id = std::nullopt);

// Line-oriented text format:
//   RASTERDB v1 kind=<kind> variant=<variant> sep=<d> samples=<s>
//   <id>\t<category>\t<len>\t<v1,...,vlen>      (values with 6 decimals)
void save(const DescriptorDatabase& db, std::ostream& out);
void save(const DescriptorDatabase& db, const std::filesystem::path& path);
DescriptorDatabase load(std::istream& in);
DescriptorDatabase load(const std::filesystem::path& path);

}  // namespace rastershape
