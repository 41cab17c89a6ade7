#ifndef PRIVPOINTS_IO_HPP
#define PRIVPOINTS_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "privpoints/estimators.hpp"
#include "privpoints/geometry.hpp"
#include "privpoints/mechanism.hpp"

namespace privpoints {

/// Provenance stamped into every output file so a run can be reproduced:
/// the seed, the library version and a hash of the effective configuration.
struct RunMeta {
    std::uint64_t seed = 0;
    std::string version;
    std::string config_hash;
};

/// FNV-1a hash of a canonical configuration string, as fixed-width hex.
std::string config_hash(const std::string& canonical);

// Release documents (JSON). Numbers round-trip exactly.
std::string release_to_json(const Release& release, const RunMeta& meta);
Release release_from_json(const std::string& text, RunMeta* meta = nullptr);
void save_release(const Release& release, const RunMeta& meta, const std::string& path);
Release load_release(const std::string& path, RunMeta* meta = nullptr);

// Point CSVs: header `x,y` (or `lat,lon`, mapped to x,y in column order),
// one point per row. Writers put RunMeta in leading `#` comment lines;
// readers skip comments.
void save_points_csv(const PointSet2D& points, const RunMeta& meta,
                     const std::string& path);
PointSet2D load_points_csv(const std::string& path);

// Value files: one real per line, `#` comments and an optional single-column
// CSV header allowed.
void save_values(const std::vector<double>& values, const RunMeta& meta,
                 const std::string& path);
std::vector<double> load_values(const std::string& path);

// Query batches: CSV with header `min_x,min_y,max_x,max_y`.
std::vector<Rect> load_queries_csv(const std::string& path);
void save_query_answers_csv(const std::vector<Rect>& queries,
                            const std::vector<double>& answers, const RunMeta& meta,
                            const std::string& path);

// Density export: CSV of (interval_lo, interval_hi, density).
void save_density_csv(const DensityEstimate& density, const RunMeta& meta,
                      const std::string& path);

}  // namespace privpoints

#endif  // PRIVPOINTS_IO_HPP
