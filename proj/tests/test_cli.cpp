#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "privpoints/io.hpp"

using namespace privpoints;
namespace fs = std::filesystem;

namespace {

const char* kCli = PRIVPOINTS_CLI_PATH;

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / "privpoints_cli_scratch";
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const char* name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string run_capture(const std::string& args, const std::string& out_file) {
    const std::string cmd =
        std::string(kCli) + " " + args + " >" + out_file + " 2>/dev/null";
    if (std::system(cmd.c_str()) == -1) return {};
    std::ifstream in(out_file);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

}  // namespace

TEST_CASE("synth -> publish -> reconstruct -> query pipeline") {
    Scratch tmp;
    const std::string pts = tmp / "pts.csv";
    const std::string rel = tmp / "release.json";
    const std::string rec = tmp / "rec.csv";
    const std::string queries = tmp / "queries.csv";
    const std::string answers = tmp / "answers.csv";

    REQUIRE(run("synth --family clustered --n 400 --seed 5 --out " + pts) == 0);
    REQUIRE(fs::exists(pts));
    REQUIRE(load_points_csv(pts).size() == 400);

    REQUIRE(run("publish --in " + pts + " --epsilon 1 --k 10 --seed 42 --out " + rel) ==
            0);
    const Release release = load_release(rel);
    CHECK(release.point_count() == 400);
    CHECK(release.group_size == 10);
    CHECK(release.epsilon == 1.0);

    REQUIRE(run("reconstruct --in " + rel + " --out " + rec) == 0);
    CHECK(load_points_csv(rec).size() == 400);

    {
        std::ofstream out(queries);
        out << "min_x,min_y,max_x,max_y\n0,0,1,1\n0.2,0.2,0.4,0.7\n";
    }
    REQUIRE(run("query --in " + rel + " --queries " + queries + " --out " + answers) ==
            0);
    std::ifstream in(answers);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    }
    REQUIRE(rows.size() == 3);  // header + 2 answers
    // The full-domain query reports the exact public count.
    CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "400");
}

TEST_CASE("publishing twice with the same seed is byte-identical") {
    Scratch tmp;
    const std::string pts = tmp / "pts.csv";
    REQUIRE(run("synth --family uniform2d --n 200 --seed 9 --out " + pts) == 0);

    const std::string rel1 = tmp / "a.json";
    const std::string rel2 = tmp / "b.json";
    const std::string rel3 = tmp / "c.json";
    REQUIRE(run("publish --in " + pts + " --epsilon 0.5 --k 5 --seed 7 --out " + rel1) == 0);
    REQUIRE(run("publish --in " + pts + " --epsilon 0.5 --k 5 --seed 7 --out " + rel2) == 0);
    REQUIRE(run("publish --in " + pts + " --epsilon 0.5 --k 5 --seed 8 --out " + rel3) == 0);
    CHECK(slurp(rel1) == slurp(rel2));
    CHECK(slurp(rel1) != slurp(rel3));
}

TEST_CASE("noise off produces seed-independent releases") {
    Scratch tmp;
    const std::string pts = tmp / "pts.csv";
    REQUIRE(run("synth --family uniform2d --n 100 --seed 1 --out " + pts) == 0);
    const std::string rel1 = tmp / "a.json";
    const std::string rel2 = tmp / "b.json";
    REQUIRE(run("publish --in " + pts + " --epsilon 1 --k 4 --seed 1 --noise off --out " +
                rel1) == 0);
    REQUIRE(run("publish --in " + pts + " --epsilon 1 --k 4 --seed 2 --noise off --out " +
                rel2) == 0);
    CHECK(load_release(rel1).noisy_sums == load_release(rel2).noisy_sums);
}

TEST_CASE("median query prints value and point") {
    Scratch tmp;
    const std::string pts = tmp / "pts.csv";
    const std::string rel = tmp / "rel.json";
    REQUIRE(run("synth --family clustered --n 99 --seed 3 --out " + pts) == 0);
    REQUIRE(run("publish --in " + pts + " --epsilon 2 --k 3 --seed 11 --out " + rel) == 0);
    const std::string text =
        run_capture("query --in " + rel + " --median", tmp / "median.txt");
    CHECK(text.find("median_value=") != std::string::npos);
    CHECK(text.find("median_point=") != std::string::npos);
}

TEST_CASE("error table building and automatic group size selection") {
    Scratch tmp;
    const std::string table = tmp / "table.json";
    REQUIRE(run("table --out " + table + " --n-max 256 --trials 30 --seed 12") == 0);
    REQUIRE(fs::exists(table));

    // Print it back.
    REQUIRE(run("table --in " + table) == 0);

    const std::string pts = tmp / "pts.csv";
    const std::string rel = tmp / "rel.json";
    REQUIRE(run("synth --family uniform2d --n 300 --seed 2 --out " + pts) == 0);
    REQUIRE(run("publish --in " + pts + " --epsilon 1 --k auto --table " + table +
                " --seed 5 --out " + rel) == 0);
    const Release release = load_release(rel);
    CHECK(release.point_count() == 300);
    CHECK(release.group_size >= 1);
}

TEST_CASE("bench subcommand writes a CSV") {
    Scratch tmp;
    const std::string table = tmp / "table.json";
    REQUIRE(run("table --out " + table + " --n-max 128 --trials 20 --seed 4") == 0);
    const std::string out = tmp / "sweep.csv";
    REQUIRE(run("bench --exp err-vs-k --n 300 --trials 10 --seed 6 --table " + table +
                " --out " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("measured") != std::string::npos);
    CHECK(text.find("predicted") != std::string::npos);
}

TEST_CASE("usage and input errors use distinct exit codes") {
    Scratch tmp;
    // No subcommand.
    CHECK(run("") == 2);
    // Unknown flag.
    CHECK(run("publish --nope") == 2);
    // Missing required option.
    CHECK(run("publish --in x.csv --out y.json") == 2);
    // Missing input file.
    CHECK(run("publish --in " + (tmp / "missing.csv") + " --epsilon 1 --out " +
              (tmp / "o.json")) == 2);
    // Bad epsilon.
    const std::string pts = tmp / "pts.csv";
    REQUIRE(run("synth --family uniform2d --n 50 --seed 1 --out " + pts) == 0);
    CHECK(run("publish --in " + pts + " --epsilon 0 --out " + (tmp / "o.json")) == 2);
    // k larger than n.
    CHECK(run("publish --in " + pts + " --epsilon 1 --k 500 --out " + (tmp / "o.json")) ==
          2);
    // --help exits 0.
    CHECK(run("--help") == 0);
    CHECK(run("publish --help") == 0);
}

TEST_CASE("reconstruct can emit values and diffused points") {
    Scratch tmp;
    const std::string pts = tmp / "pts.csv";
    const std::string rel = tmp / "rel.json";
    const std::string rec = tmp / "rec.csv";
    const std::string vals = tmp / "vals.csv";
    REQUIRE(run("synth --family clustered --n 150 --clusters 2 --seed 8 --out " + pts) ==
            0);
    REQUIRE(run("publish --in " + pts + " --epsilon 1 --k 6 --seed 2 --out " + rel) == 0);
    REQUIRE(run("reconstruct --in " + rel + " --out " + rec + " --values " + vals +
                " --diffuse --seed 3") == 0);
    CHECK(load_points_csv(rec).size() == 150);
    const auto values = load_values(vals);
    REQUIRE(values.size() == 150);
    CHECK(std::is_sorted(values.begin(), values.end()));
}
