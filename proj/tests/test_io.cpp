#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "privpoints/estimators.hpp"
#include "privpoints/io.hpp"
#include "privpoints/mechanism.hpp"

using namespace privpoints;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const char* name) { return fs::temp_directory_path() / name; }

Release sample_release() {
    Release rel;
    rel.noisy_sums = {0.1 + 0.2, -1.75e-13, 3.5, 17.0 / 7.0};  // awkward doubles
    rel.group_size = 3;
    rel.tail_size = 2;
    rel.epsilon = 0.7;
    rel.hilbert.order = 9;
    rel.hilbert.domain = {-122.6, 37.2, -121.7, 38.1};
    return rel;
}

RunMeta sample_meta() {
    RunMeta meta;
    meta.seed = 123456789012345ULL;
    meta.version = "0.1.0";
    meta.config_hash = config_hash("example");
    return meta;
}

}  // namespace

TEST_CASE("config hash is deterministic and input-sensitive") {
    CHECK(config_hash("abc") == config_hash("abc"));
    CHECK(config_hash("abc") != config_hash("abd"));
    CHECK(config_hash("").size() == 16);  // fixed-width hex
    for (char c : config_hash("xyz")) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
}

TEST_CASE("release JSON round-trips every field bit-exactly") {
    const Release rel = sample_release();
    const RunMeta meta = sample_meta();
    const std::string text = release_to_json(rel, meta);

    RunMeta meta2;
    const Release back = release_from_json(text, &meta2);
    CHECK(back.noisy_sums == rel.noisy_sums);  // exact doubles
    CHECK(back.group_size == rel.group_size);
    CHECK(back.tail_size == rel.tail_size);
    CHECK(back.epsilon == rel.epsilon);
    CHECK(back.hilbert.order == rel.hilbert.order);
    CHECK(back.hilbert.domain.min_x == rel.hilbert.domain.min_x);
    CHECK(back.hilbert.domain.max_y == rel.hilbert.domain.max_y);
    CHECK(meta2.seed == meta.seed);
    CHECK(meta2.version == meta.version);
    CHECK(meta2.config_hash == meta.config_hash);
}

TEST_CASE("release files round-trip through disk") {
    const fs::path path = temp_file("privpoints_release_test.json");
    save_release(sample_release(), sample_meta(), path.string());
    RunMeta meta;
    const Release back = load_release(path.string(), &meta);
    CHECK(back.noisy_sums == sample_release().noisy_sums);
    CHECK(meta.seed == sample_meta().seed);
    fs::remove(path);
}

TEST_CASE("malformed release documents are rejected with runtime errors") {
    CHECK_THROWS_AS(release_from_json("{"), std::runtime_error);
    CHECK_THROWS_AS(release_from_json("[]"), std::runtime_error);
    CHECK_THROWS_AS(release_from_json("{\"kind\":\"other\"}"), std::runtime_error);
    // Valid JSON, missing required fields.
    CHECK_THROWS_AS(release_from_json("{\"kind\":\"release\"}"), std::runtime_error);
    CHECK_THROWS_AS(load_release("/nonexistent/path.json"), std::runtime_error);
}

TEST_CASE("point CSVs round-trip exactly and tolerate comments") {
    const fs::path path = temp_file("privpoints_points_test.csv");
    const PointSet2D pts = {{0.1, 0.9}, {1.0 / 3.0, 2.0 / 3.0}, {-5.25, 1e-17}};
    save_points_csv(pts, sample_meta(), path.string());

    // The writer leads with a comment carrying the provenance fields.
    {
        std::ifstream in(path);
        std::string first;
        std::getline(in, first);
        CHECK(first.rfind("#", 0) == 0);
        CHECK(first.find("seed=") != std::string::npos);
        CHECK(first.find("version=") != std::string::npos);
        CHECK(first.find("config=") != std::string::npos);
    }

    const PointSet2D back = load_points_csv(path.string());
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(back[i].x == pts[i].x);
        CHECK(back[i].y == pts[i].y);
    }
    fs::remove(path);
}

TEST_CASE("point CSV reader accepts alternative headers and flags bad rows") {
    const fs::path path = temp_file("privpoints_points_manual.csv");
    {
        std::ofstream out(path);
        out << "# hand-written\n\nlat,lon\n1.5,2.5\n3,4\n";
    }
    const PointSet2D pts = load_points_csv(path.string());
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].x == 1.5);
    CHECK(pts[0].y == 2.5);

    {
        std::ofstream out(path);
        out << "x,y\n1.0\n";  // wrong column count
    }
    CHECK_THROWS_AS(load_points_csv(path.string()), std::runtime_error);
    {
        std::ofstream out(path);
        out << "x,y\n1.0,banana\n";
    }
    CHECK_THROWS_AS(load_points_csv(path.string()), std::runtime_error);
    CHECK_THROWS_AS(load_points_csv("/no/such/file.csv"), std::runtime_error);
    fs::remove(path);
}

TEST_CASE("value files round-trip") {
    const fs::path path = temp_file("privpoints_values_test.csv");
    const std::vector<double> values = {0.0, 0.5, 1.0, 0.1234567890123456};
    save_values(values, sample_meta(), path.string());
    CHECK(load_values(path.string()) == values);
    fs::remove(path);
}

TEST_CASE("query batches load and validate") {
    const fs::path path = temp_file("privpoints_queries_test.csv");
    {
        std::ofstream out(path);
        out << "min_x,min_y,max_x,max_y\n0,0,1,1\n0.25,0.25,0.5,0.75\n";
    }
    const auto queries = load_queries_csv(path.string());
    REQUIRE(queries.size() == 2);
    CHECK(queries[1].min_x == 0.25);
    CHECK(queries[1].max_y == 0.75);

    {
        std::ofstream out(path);
        out << "min_x,min_y,max_x,max_y\n0.5,0,0.25,1\n";  // inverted
    }
    CHECK_THROWS(load_queries_csv(path.string()));
    fs::remove(path);
}

TEST_CASE("query answers and densities are written with one row per entry") {
    const fs::path path = temp_file("privpoints_answers_test.csv");
    const std::vector<Rect> queries = {{0, 0, 1, 1}, {0, 0, 0.5, 0.5}};
    save_query_answers_csv(queries, {10.0, 2.5}, sample_meta(), path.string());
    {
        std::ifstream in(path);
        std::string line;
        int rows = 0;
        bool saw_header = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!saw_header) {
                saw_header = true;
                CHECK(line.find("count") != std::string::npos);
                continue;
            }
            ++rows;
        }
        CHECK(rows == 2);
    }
    fs::remove(path);

    const fs::path dpath = temp_file("privpoints_density_test.csv");
    const auto density = density_from_values({0.25, 0.75});
    save_density_csv(density, sample_meta(), dpath.string());
    {
        std::ifstream in(dpath);
        std::string line;
        int rows = 0;
        bool saw_header = false;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (!saw_header) {
                saw_header = true;
                continue;
            }
            ++rows;
        }
        CHECK(rows == 2);  // two density intervals
    }
    fs::remove(dpath);
}
