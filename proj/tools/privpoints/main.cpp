// privpoints: publish 2D pointsets under differential privacy and work with
// the published artifacts. See `privpoints --help` for the subcommands.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "privpoints/baselines.hpp"
#include "privpoints/error_model.hpp"
#include "privpoints/estimators.hpp"
#include "privpoints/hilbert.hpp"
#include "privpoints/io.hpp"
#include "privpoints/isotonic.hpp"
#include "privpoints/mechanism.hpp"
#include "privpoints/noise.hpp"
#include "privpoints/pointset.hpp"
#include "privpoints/reconstruct.hpp"
#include "privpoints/version.hpp"

namespace pp = privpoints;

namespace {

pp::Rect parse_domain(const std::string& spec) {
    std::vector<double> parts;
    std::istringstream in(spec);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            parts.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad --domain value: " + field);
        }
    }
    if (parts.size() != 4) {
        throw std::invalid_argument("--domain needs min_x,min_y,max_x,max_y");
    }
    pp::Rect r{parts[0], parts[1], parts[2], parts[3]};
    r.validate();
    return r;
}

bool parse_noise(const std::string& s) {
    if (s == "on") return true;
    if (s == "off") return false;
    throw std::invalid_argument("--noise must be 'on' or 'off'");
}

pp::RunMeta make_meta(std::uint64_t seed, const std::string& canonical) {
    return pp::RunMeta{seed, pp::kVersion, pp::config_hash(canonical)};
}

std::ofstream open_csv(const std::string& path, const pp::RunMeta& meta,
                       const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "# seed=" << meta.seed << " version=" << meta.version
        << " config=" << meta.config_hash << "\n"
        << header << "\n";
    return out;
}

pp::ErrorTable obtain_table(const std::string& table_path, std::size_t trials,
                            std::uint64_t seed) {
    if (!table_path.empty()) return pp::load_error_table(table_path);
    std::cerr << "building default error table (trials=" << trials << ")...\n";
    return pp::default_error_table(trials, pp::derive_seed(seed, 0x7ab1e));
}

// --------------------------------------------------------------------------
// synth

struct SynthOpts {
    std::string family = "clustered";
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    std::string out;
    double value = 0.5;
    std::size_t clusters = 5;
    double spread = 0.05;
    std::string domain = "0,0,1,1";
    double ls = 0.0;  // only for median129
};

int run_synth(const SynthOpts& o) {
    std::ostringstream canon;
    canon << "synth family=" << o.family << " n=" << o.n << " seed=" << o.seed
          << " value=" << o.value << " clusters=" << o.clusters
          << " spread=" << o.spread << " domain=" << o.domain << " ls=" << o.ls;
    const pp::RunMeta meta = make_meta(o.seed, canon.str());
    pp::Rng rng(o.seed);

    if (o.family == "clustered" || o.family == "uniform2d") {
        const pp::Rect domain = parse_domain(o.domain);
        const pp::PointSet2D points =
            o.family == "clustered"
                ? pp::clustered_points(o.n, o.clusters, o.spread, domain, rng)
                : pp::uniform_points(o.n, domain, rng);
        pp::save_points_csv(points, meta, o.out);
        std::cout << "wrote " << points.size() << " points to " << o.out << "\n";
        return 0;
    }

    std::vector<double> values;
    if (o.family == "repeat" || o.family == "repeating-single-value") {
        values = pp::repeating_value_data(o.n, o.value);
    } else if (o.family == "spaced" || o.family == "equally-spaced") {
        values = pp::equally_spaced_data(o.n);
    } else if (o.family == "uniform") {
        values = pp::uniform_data(o.n, rng);
    } else if (o.family == "exponential") {
        values = pp::exponential_data(o.n, rng);
    } else if (o.family == "median129") {
        values = o.ls > 0.0 ? pp::median_data_with_local_sensitivity(o.ls, rng)
                            : pp::median_benchmark_data(rng);
    } else {
        throw std::invalid_argument("unknown --family: " + o.family);
    }
    pp::save_values(values, meta, o.out);
    std::cout << "wrote " << values.size() << " values to " << o.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// publish

struct PublishOpts {
    std::string in;
    double epsilon = 1.0;
    std::string k = "auto";
    int order = 10;
    std::uint64_t seed = 1;
    std::string noise = "on";
    std::string domain = "0,0,1,1";
    std::string out;
    std::string table;
    std::size_t table_trials = 500;
    bool private_size = false;
    double rho = 0.1;
};

int run_publish(const PublishOpts& o) {
    if (!(o.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be > 0");
    const bool add_noise = parse_noise(o.noise);
    const pp::PointSet2D points = pp::load_points_csv(o.in);
    if (points.empty()) throw std::runtime_error("no points in " + o.in);

    pp::HilbertConfig cfg;
    cfg.order = o.order;
    cfg.domain = parse_domain(o.domain);
    cfg.validate();

    std::size_t k = 0;
    if (o.k == "auto") {
        const double eps_for_k =
            o.private_size ? (1.0 - o.rho) * o.epsilon : o.epsilon;
        const pp::ErrorTable table = obtain_table(o.table, o.table_trials, o.seed);
        k = pp::choose_group_size(points.size(), eps_for_k, table);
    } else {
        try {
            k = std::stoull(o.k);
        } catch (const std::exception&) {
            throw std::invalid_argument("--k must be a positive integer or 'auto'");
        }
        if (k < 1 || k > points.size()) {
            throw std::invalid_argument("--k must be in [1, n]");
        }
    }

    std::ostringstream canon;
    canon << "publish in=" << o.in << " epsilon=" << o.epsilon << " k=" << k
          << " order=" << o.order << " seed=" << o.seed << " noise=" << o.noise
          << " domain=" << o.domain << " private_size=" << o.private_size
          << " rho=" << o.rho;
    const pp::RunMeta meta = make_meta(o.seed, canon.str());

    pp::Rng rng(o.seed);
    pp::Release release;
    if (o.private_size) {
        auto [noisy_n, rel] = pp::publish_with_private_size(points, o.epsilon, o.rho,
                                                            k, cfg, rng, add_noise);
        release = std::move(rel);
        std::cout << "padded size " << noisy_n << "\n";
    } else {
        release = pp::publish(points, o.epsilon, k, cfg, rng, add_noise);
    }
    pp::save_release(release, meta, o.out);
    std::cout << "n=" << points.size() << " k=" << k << " epsilon=" << o.epsilon
              << " groups=" << release.noisy_sums.size() << " -> " << o.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// reconstruct

struct ReconstructOpts {
    std::string in;
    std::string out;
    std::string values_out;
    bool diffuse = false;
    std::uint64_t seed = 1;
};

int run_reconstruct(const ReconstructOpts& o) {
    const pp::Release release = pp::load_release(o.in);
    const pp::Reconstruction rec = pp::reconstruct(release);

    std::ostringstream canon;
    canon << "reconstruct in=" << o.in << " diffuse=" << o.diffuse
          << " seed=" << o.seed;
    const pp::RunMeta meta = make_meta(o.seed, canon.str());

    pp::PointSet2D points = rec.points;
    if (o.diffuse) {
        pp::Rng rng(o.seed);
        points = pp::diffuse_for_viz(points, release.hilbert, rng);
    }
    pp::save_points_csv(points, meta, o.out);
    if (!o.values_out.empty()) pp::save_values(rec.values, meta, o.values_out);
    std::cout << "reconstructed " << points.size() << " points -> " << o.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// query

struct QueryOpts {
    std::string in;
    std::string queries;
    std::string out;
    bool median = false;
    std::uint64_t seed = 1;
};

int run_query(const QueryOpts& o) {
    const pp::Release release = pp::load_release(o.in);

    if (o.median) {
        const auto [value, point] = pp::median_from_release(release);
        std::cout << "median_value=" << value << " median_point=" << point.x << ","
                  << point.y << "\n";
        return 0;
    }
    if (o.queries.empty()) {
        throw std::invalid_argument("query needs --queries FILE or --median");
    }
    const std::vector<pp::Rect> queries = pp::load_queries_csv(o.queries);
    const pp::Reconstruction rec = pp::reconstruct(release);
    const pp::DensityEstimate density = pp::density_from_values(rec.values);

    std::vector<double> answers;
    answers.reserve(queries.size());
    for (const pp::Rect& q : queries) {
        answers.push_back(
            pp::range_count(density, q, release.hilbert, release.point_count()));
    }

    std::ostringstream canon;
    canon << "query in=" << o.in << " queries=" << o.queries;
    const pp::RunMeta meta = make_meta(o.seed, canon.str());
    pp::save_query_answers_csv(queries, answers, meta, o.out);
    std::cout << "answered " << answers.size() << " queries -> " << o.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// table

struct TableOpts {
    std::string out;
    std::string in;
    std::string family = "repeating-single-value";
    std::string family_file;
    std::size_t trials = 500;
    std::uint64_t seed = pp::kDefaultTableSeed;
    std::size_t n_max = 65536;
    std::vector<double> eps = {1.0};
};

int run_table(const TableOpts& o) {
    if (!o.in.empty()) {
        const pp::ErrorTable table = pp::load_error_table(o.in);
        std::cout << "family=" << pp::family_name(table.family.kind)
                  << " trials=" << table.trials << " seed=" << table.seed << "\n";
        std::cout << "n";
        for (double e : table.eps_grid) std::cout << ",err1(eps=" << e << ")";
        std::cout << "\n";
        for (std::size_t c = 0; c < table.n_grid.size(); ++c) {
            std::cout << table.n_grid[c];
            for (std::size_t r = 0; r < table.eps_grid.size(); ++r) {
                std::cout << "," << table.err1[r][c];
            }
            std::cout << "\n";
        }
        return 0;
    }
    if (o.out.empty()) throw std::invalid_argument("table needs --out or --in");

    pp::DatasetFamily family{pp::family_from_name(o.family), o.family_file};
    std::vector<std::size_t> n_grid;
    for (std::size_t n = 2; n <= o.n_max; n *= 2) n_grid.push_back(n);
    std::vector<double> eps = o.eps;
    std::sort(eps.begin(), eps.end());
    const pp::ErrorTable table =
        pp::build_error_table(family, std::move(n_grid), std::move(eps), o.trials, o.seed);
    pp::save_error_table(table, o.out);
    std::cout << "wrote " << table.n_grid.size() << "x" << table.eps_grid.size()
              << " table -> " << o.out << "\n";
    return 0;
}

// --------------------------------------------------------------------------
// bench

struct BenchOpts {
    std::string exp = "err1-vs-n";
    std::string family = "repeating-single-value";
    std::string family_file;
    double epsilon = 1.0;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t n = 10000;
    std::size_t n_max = 65536;
    std::size_t queries = 1000;
    double qmax = 1.0 / 32.0;
    std::string table;
    std::string out;
};

int bench_err1_vs_n(const BenchOpts& o, const pp::RunMeta& meta) {
    const pp::DatasetFamily family{pp::family_from_name(o.family), o.family_file};
    std::ofstream out = open_csv(o.out, meta, "family,n,epsilon,err1,std_error,trials");
    std::size_t idx = 0;
    for (std::size_t n = 2; n <= o.n_max; n *= 2, ++idx) {
        const pp::MonteCarloStat stat = pp::estimate_err1_stat(
            family.generate(n), o.epsilon, o.trials, pp::derive_seed(o.seed, idx));
        out << o.family << ',' << n << ',' << o.epsilon << ',' << stat.mean << ','
            << stat.std_error << ',' << stat.trials << "\n";
    }
    return 0;
}

int bench_err_vs_k(const BenchOpts& o, const pp::RunMeta& meta) {
    const pp::DatasetFamily family{pp::family_from_name(o.family), o.family_file};
    const std::vector<double> data = family.generate(o.n);
    const pp::ErrorTable table = obtain_table(o.table, 500, o.seed);

    std::vector<std::size_t> ks = {1,  2,  5,  10, 20,  30,  50,
                                   75, 100, 150, 200, 300, 500};
    ks.erase(std::remove_if(ks.begin(), ks.end(),
                            [&](std::size_t k) { return k > o.n / 2; }),
             ks.end());

    std::ofstream out =
        open_csv(o.out, meta, "family,n,epsilon,k,measured,std_error,predicted");
    for (std::size_t i = 0; i < ks.size(); ++i) {
        const pp::MonteCarloStat stat = pp::estimate_err_grouped_stat(
            data, o.epsilon, ks[i], o.trials, pp::derive_seed(o.seed, i));
        out << o.family << ',' << o.n << ',' << o.epsilon << ',' << ks[i] << ','
            << stat.mean << ',' << stat.std_error << ','
            << pp::predict_err(o.n, o.epsilon, ks[i], table) << "\n";
    }
    return 0;
}

// our mechanism's median of a 1D dataset: noisy group sums, isotonic fit,
// clamp, lower-middle element
double grouped_median(const std::vector<double>& sorted, std::size_t k, double eps,
                      pp::Rng& rng) {
    auto [sums, partition] = pp::group_sums(sorted, k);
    std::vector<double> means(sums.size());
    for (std::size_t b = 0; b < sums.size(); ++b) {
        means[b] = (sums[b] + pp::laplace_sample(1.0 / eps, rng)) /
                   static_cast<double>(partition.sizes[b]);
    }
    std::vector<double> fit = pp::isotonic_l2(means).values;
    for (double& v : fit) v = std::clamp(v, 0.0, 1.0);
    const std::size_t mi = (sorted.size() - 1) / 2;
    return fit[mi / k];
}

int bench_median_compare(const BenchOpts& o, const pp::RunMeta& meta) {
    const pp::ErrorTable table = obtain_table(o.table, 500, o.seed);
    const std::size_t k = pp::choose_group_size(129, o.epsilon, table);
    std::ofstream out = open_csv(
        o.out, meta, "local_sensitivity,ours_mean_abs_err,smooth_mean_abs_err,trials");
    for (int step = 1; step <= 10; ++step) {
        const double ls = 0.05 * step;
        double ours = 0.0, smooth = 0.0;
        for (std::size_t t = 0; t < o.trials; ++t) {
            pp::Rng rng = pp::Rng::substream(o.seed, 1000 * step + t);
            const std::vector<double> data =
                pp::median_data_with_local_sensitivity(ls, rng);
            const double truth = data[(data.size() - 1) / 2];
            ours += std::fabs(grouped_median(data, k, o.epsilon, rng) - truth);
            smooth += std::fabs(
                pp::smooth_sensitivity_median(data, o.epsilon, rng).noisy_median -
                truth);
        }
        out << ls << ',' << ours / static_cast<double>(o.trials) << ','
            << smooth / static_cast<double>(o.trials) << ',' << o.trials << "\n";
    }
    return 0;
}

int bench_range_compare(const BenchOpts& o, const pp::RunMeta& meta) {
    const pp::Rect domain{0.0, 0.0, 1.0, 1.0};
    pp::Rng data_rng(pp::derive_seed(o.seed, 1));
    const pp::PointSet2D points =
        pp::clustered_points(o.n, 5, 0.05, domain, data_rng);

    pp::HilbertConfig cfg;
    cfg.domain = domain;

    const pp::ErrorTable table = obtain_table(o.table, 500, o.seed);
    const std::size_t k = pp::choose_group_size(o.n, o.epsilon, table);

    pp::Rng rng(pp::derive_seed(o.seed, 2));
    const pp::Release release = pp::publish(points, o.epsilon, k, cfg, rng);
    const pp::Reconstruction rec = pp::reconstruct(release);
    const pp::DensityEstimate density = pp::density_from_values(rec.values);
    const pp::NoisyHistogram2D hist =
        pp::equiwidth_publish(points, 41, o.epsilon, domain, rng);
    const pp::NoisyWaveletTransform wt =
        pp::wavelet_publish(points, 9, o.epsilon, domain, rng);
    const pp::WaveletCounter counter(wt);

    pp::Rng qrng(pp::derive_seed(o.seed, 3));
    double err_ours = 0.0, err_wavelet = 0.0, err_equiwidth = 0.0;
    for (std::size_t i = 0; i < o.queries; ++i) {
        const double side = o.qmax * qrng.uniform01();
        const double x0 = (1.0 - side) * qrng.uniform01();
        const double y0 = (1.0 - side) * qrng.uniform01();
        const pp::Rect q{x0, y0, x0 + side, y0 + side};
        double truth = 0.0;
        for (const pp::Point2D& p : points) {
            if (q.contains(p)) truth += 1.0;
        }
        err_ours += std::fabs(pp::range_count(density, q, cfg, o.n) - truth);
        err_wavelet += std::fabs(counter.count(q) - truth);
        err_equiwidth += std::fabs(pp::equiwidth_range_count(hist, q) - truth);
    }
    const auto qn = static_cast<double>(o.queries);
    std::ofstream out = open_csv(o.out, meta, "mechanism,avg_abs_err,queries,n,epsilon,k");
    out << "grouped-sums," << err_ours / qn << ',' << o.queries << ',' << o.n << ','
        << o.epsilon << ',' << k << "\n";
    out << "wavelet," << err_wavelet / qn << ',' << o.queries << ',' << o.n << ','
        << o.epsilon << ',' << k << "\n";
    out << "equiwidth," << err_equiwidth / qn << ',' << o.queries << ',' << o.n << ','
        << o.epsilon << ',' << k << "\n";
    return 0;
}

int run_bench(const BenchOpts& o) {
    if (!(o.epsilon > 0.0)) throw std::invalid_argument("--epsilon must be > 0");
    if (o.out.empty()) throw std::invalid_argument("bench needs --out");
    std::ostringstream canon;
    canon << "bench exp=" << o.exp << " family=" << o.family << " eps=" << o.epsilon
          << " trials=" << o.trials << " seed=" << o.seed << " n=" << o.n
          << " n_max=" << o.n_max << " queries=" << o.queries << " qmax=" << o.qmax;
    const pp::RunMeta meta = make_meta(o.seed, canon.str());

    int rc;
    if (o.exp == "err1-vs-n") {
        rc = bench_err1_vs_n(o, meta);
    } else if (o.exp == "err-vs-k") {
        rc = bench_err_vs_k(o, meta);
    } else if (o.exp == "median-compare") {
        rc = bench_median_compare(o, meta);
    } else if (o.exp == "range-compare") {
        rc = bench_range_compare(o, meta);
    } else {
        throw std::invalid_argument("unknown --exp: " + o.exp);
    }
    std::cout << "wrote " << o.exp << " results -> " << o.out << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differentially private publishing of 2D pointsets"};
    app.require_subcommand(1);

    SynthOpts synth;
    CLI::App* s = app.add_subcommand("synth", "generate a synthetic dataset");
    s->add_option("--family", synth.family,
                  "repeat|spaced|uniform|exponential|median129|clustered|uniform2d");
    s->add_option("--n", synth.n, "dataset size");
    s->add_option("--seed", synth.seed, "random seed");
    s->add_option("--value", synth.value, "value for the repeat family");
    s->add_option("--clusters", synth.clusters, "cluster count (clustered family)");
    s->add_option("--spread", synth.spread, "cluster spread (clustered family)");
    s->add_option("--domain", synth.domain, "min_x,min_y,max_x,max_y");
    s->add_option("--ls", synth.ls, "pin the median's local sensitivity (median129)");
    s->add_option("--out", synth.out, "output file")->required();

    PublishOpts publish;
    CLI::App* p = app.add_subcommand("publish", "publish a pointset privately");
    p->add_option("--in", publish.in, "input points CSV")->required();
    p->add_option("--epsilon", publish.epsilon, "privacy budget")->required();
    p->add_option("--k", publish.k, "group size, or 'auto'");
    p->add_option("--order", publish.order, "curve order (grid is 2^order per axis)");
    p->add_option("--seed", publish.seed, "random seed");
    p->add_option("--noise", publish.noise, "on|off (off is a test hook)");
    p->add_option("--domain", publish.domain, "min_x,min_y,max_x,max_y");
    p->add_option("--table", publish.table, "error table JSON for --k auto");
    p->add_option("--table-trials", publish.table_trials,
                  "trials when building the table in-process");
    p->add_flag("--private-size", publish.private_size,
                "also hide n (pads to a noisy size)");
    p->add_option("--rho", publish.rho, "budget share for the noisy size");
    p->add_option("--out", publish.out, "output release JSON")->required();

    ReconstructOpts rec;
    CLI::App* r = app.add_subcommand("reconstruct", "reconstruct points from a release");
    r->add_option("--in", rec.in, "release JSON")->required();
    r->add_option("--out", rec.out, "output points CSV")->required();
    r->add_option("--values", rec.values_out, "also write the 1D values");
    r->add_flag("--diffuse", rec.diffuse, "spread repeated points for plotting");
    r->add_option("--seed", rec.seed, "seed for --diffuse");

    QueryOpts query;
    CLI::App* q = app.add_subcommand("query", "answer range or median queries");
    q->add_option("--in", query.in, "release JSON")->required();
    q->add_option("--queries", query.queries, "query rectangles CSV");
    q->add_option("--out", query.out, "answers CSV");
    q->add_flag("--median", query.median, "print the median instead");

    TableOpts table;
    CLI::App* t = app.add_subcommand("table", "build or print an error table");
    t->add_option("--out", table.out, "write a freshly built table here");
    t->add_option("--in", table.in, "print an existing table");
    t->add_option("--family", table.family, "dataset family");
    t->add_option("--family-file", table.family_file, "values file for family=file");
    t->add_option("--trials", table.trials, "Monte-Carlo trials per cell");
    t->add_option("--seed", table.seed, "random seed");
    t->add_option("--n-max", table.n_max, "largest n (powers of two from 2)");
    t->add_option("--eps", table.eps, "epsilon grid");

    BenchOpts bench;
    CLI::App* b = app.add_subcommand("bench", "error sweeps over n, k, or mechanisms");
    b->add_option("--exp", bench.exp,
                  "err1-vs-n|err-vs-k|median-compare|range-compare");
    b->add_option("--family", bench.family, "dataset family");
    b->add_option("--family-file", bench.family_file, "values file for family=file");
    b->add_option("--epsilon", bench.epsilon, "privacy budget");
    b->add_option("--trials", bench.trials, "Monte-Carlo trials");
    b->add_option("--seed", bench.seed, "random seed");
    b->add_option("--n", bench.n, "dataset size");
    b->add_option("--n-max", bench.n_max, "largest n for err1-vs-n");
    b->add_option("--queries", bench.queries, "query count for range-compare");
    b->add_option("--qmax", bench.qmax, "max square width for range-compare");
    b->add_option("--table", bench.table, "error table JSON");
    b->add_option("--out", bench.out, "output CSV")->required();

    try {
        app.parse(argc, argv);
        if (s->parsed()) return run_synth(synth);
        if (p->parsed()) return run_publish(publish);
        if (r->parsed()) return run_reconstruct(rec);
        if (q->parsed()) return run_query(query);
        if (t->parsed()) return run_table(table);
        if (b->parsed()) return run_bench(bench);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
