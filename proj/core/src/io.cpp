#include "privpoints/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "privpoints/version.hpp"

namespace privpoints {

namespace {

// %.17g round-trips every double exactly
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string meta_comment(const RunMeta& meta) {
    std::ostringstream out;
    out << "# seed=" << meta.seed << " version=" << meta.version
        << " config=" << meta.config_hash << "\n";
    return out.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const auto lo = field.find_first_not_of(" \t\r");
        const auto hi = field.find_last_not_of(" \t\r");
        fields.push_back(lo == std::string::npos ? std::string()
                                                 : field.substr(lo, hi - lo + 1));
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(s, &used);
        return used == s.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::vector<std::vector<double>> load_numeric_csv(const std::string& path,
                                                  std::size_t columns) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = split_csv(line);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = !fields.empty();
        for (const std::string& f : fields) {
            double v;
            if (!parse_double(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (!seen_data && !seen_header) {  // tolerate a single header line
                seen_header = true;
                continue;
            }
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed row");
        }
        if (row.size() != columns) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(columns) + " columns");
        }
        rows.push_back(std::move(row));
        seen_data = true;
    }
    return rows;
}

}  // namespace

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string release_to_json(const Release& release, const RunMeta& meta) {
    release.validate();
    nlohmann::json doc;
    doc["kind"] = "release";
    doc["epsilon"] = release.epsilon;
    doc["group_size"] = release.group_size;
    doc["tail_size"] = release.tail_size;
    doc["hilbert_order"] = release.hilbert.order;
    doc["domain_rect"] = {release.hilbert.domain.min_x, release.hilbert.domain.min_y,
                          release.hilbert.domain.max_x, release.hilbert.domain.max_y};
    doc["noisy_sums"] = release.noisy_sums;
    doc["meta"] = {{"seed", meta.seed},
                   {"version", meta.version},
                   {"config_hash", meta.config_hash}};
    return doc.dump(2) + "\n";
}

Release release_from_json(const std::string& text, RunMeta* meta) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("release: bad JSON: ") + e.what());
    }
    try {
        if (doc.at("kind").get<std::string>() != "release") {
            throw std::runtime_error("release: wrong document kind");
        }
        Release release;
        release.epsilon = doc.at("epsilon").get<double>();
        release.group_size = doc.at("group_size").get<std::size_t>();
        release.tail_size = doc.at("tail_size").get<std::size_t>();
        release.hilbert.order = doc.at("hilbert_order").get<int>();
        const auto rect = doc.at("domain_rect").get<std::vector<double>>();
        if (rect.size() != 4) throw std::runtime_error("release: domain_rect needs 4 numbers");
        release.hilbert.domain = Rect{rect[0], rect[1], rect[2], rect[3]};
        release.noisy_sums = doc.at("noisy_sums").get<std::vector<double>>();
        if (meta && doc.contains("meta")) {
            meta->seed = doc["meta"].value("seed", std::uint64_t{0});
            meta->version = doc["meta"].value("version", std::string());
            meta->config_hash = doc["meta"].value("config_hash", std::string());
        }
        release.validate();
        return release;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("release: missing or bad field: ") +
                                 e.what());
    }
}

void save_release(const Release& release, const RunMeta& meta, const std::string& path) {
    std::ofstream out = open_out(path);
    out << release_to_json(release, meta);
    if (!out) throw std::runtime_error("write failed: " + path);
}

Release load_release(const std::string& path, RunMeta* meta) {
    std::ifstream in = open_in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return release_from_json(buf.str(), meta);
}

void save_points_csv(const PointSet2D& points, const RunMeta& meta,
                     const std::string& path) {
    std::ofstream out = open_out(path);
    out << meta_comment(meta) << "x,y\n";
    for (const Point2D& p : points) {
        out << fmt(p.x) << ',' << fmt(p.y) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PointSet2D load_points_csv(const std::string& path) {
    PointSet2D points;
    for (const auto& row : load_numeric_csv(path, 2)) {
        points.push_back(Point2D{row[0], row[1]});
    }
    return points;
}

void save_values(const std::vector<double>& values, const RunMeta& meta,
                 const std::string& path) {
    std::ofstream out = open_out(path);
    out << meta_comment(meta) << "x\n";
    for (double v : values) out << fmt(v) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> load_values(const std::string& path) {
    std::vector<double> values;
    for (const auto& row : load_numeric_csv(path, 1)) values.push_back(row[0]);
    return values;
}

std::vector<Rect> load_queries_csv(const std::string& path) {
    std::vector<Rect> queries;
    for (const auto& row : load_numeric_csv(path, 4)) {
        Rect r{row[0], row[1], row[2], row[3]};
        r.validate();
        queries.push_back(r);
    }
    return queries;
}

void save_query_answers_csv(const std::vector<Rect>& queries,
                            const std::vector<double>& answers, const RunMeta& meta,
                            const std::string& path) {
    if (queries.size() != answers.size()) {
        throw std::invalid_argument("save_query_answers_csv: size mismatch");
    }
    std::ofstream out = open_out(path);
    out << meta_comment(meta) << "min_x,min_y,max_x,max_y,count\n";
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const Rect& r = queries[i];
        out << fmt(r.min_x) << ',' << fmt(r.min_y) << ',' << fmt(r.max_x) << ','
            << fmt(r.max_y) << ',' << fmt(answers[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void save_density_csv(const DensityEstimate& density, const RunMeta& meta,
                      const std::string& path) {
    density.validate();
    std::ofstream out = open_out(path);
    out << meta_comment(meta) << "interval_lo,interval_hi,density\n";
    for (std::size_t i = 0; i < density.densities.size(); ++i) {
        out << fmt(density.breakpoints[i]) << ',' << fmt(density.breakpoints[i + 1])
            << ',' << fmt(density.densities[i]) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace privpoints
