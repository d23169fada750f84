#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subfreq/codes.hpp"
#include "subfreq/dataset.hpp"
#include "subfreq/hardgen.hpp"
#include "subfreq/netsketch.hpp"
#include "subfreq/oracle.hpp"
#include "subfreq/sampling.hpp"

namespace {

using namespace subfreq;

std::string num(double v) {
    if (v == std::floor(v) && std::abs(v) < 9.0e15) return std::to_string(static_cast<long long>(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string sig3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string moment_label(double p) {
    std::string s = "F" + num(p);
    return s;
}

std::vector<std::uint32_t> parse_word(const std::string& text) {
    std::vector<std::uint32_t> word;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) word.push_back(std::stoul(part));
    return word;
}

SketchKind parse_kind(const std::string& s) {
    if (s == "exact") return SketchKind::kExact;
    if (s == "bottomk") return SketchKind::kBottomK;
    if (s == "signhash") return SketchKind::kSignHash;
    throw std::invalid_argument("unknown sketch kind: " + s);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

std::map<std::string, std::string> read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

SketchNet rebuild_net(const std::map<std::string, std::string>& kv) {
    const Dataset a = load_dataset(kv.at("dataset"));
    AlphaNet net = build_net(static_cast<std::uint32_t>(a.cols()), std::stod(kv.at("alpha")));
    const SketchSpec spec = make_sketch_spec(parse_kind(kv.at("sketch")), std::stod(kv.at("eps")),
                                             std::stod(kv.at("delta")), net.members.size());
    return build_sketchnet(a, std::move(net), spec, std::stod(kv.at("p")),
                           std::stoull(kv.at("seed")));
}

int run(int argc, char** argv) {
    CLI::App app{"projected frequency estimation toolkit"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate a dataset file and report its shape");
    std::string in_path, out_path;
    ingest->add_option("--in", in_path)->required();
    ingest->add_option("--out", out_path);
    ingest->callback([&] {
        const Dataset a = load_dataset(in_path);
        if (!out_path.empty()) save_dataset(a, out_path);
        std::cout << "n=" << a.rows() << " d=" << a.cols() << " q=" << a.alphabet() << "\n";
    });

    // sample
    auto* sample = app.add_subcommand("sample", "draw a uniform row sample");
    std::string s_in, s_out;
    std::size_t s_t = 0;
    double s_eps = 0, s_delta = 0;
    std::uint64_t s_seed = 0;
    sample->add_option("--in", s_in)->required();
    sample->add_option("--out", s_out)->required();
    sample->add_option("--t", s_t);
    sample->add_option("--eps", s_eps);
    sample->add_option("--delta", s_delta);
    sample->add_option("--seed", s_seed)->required();
    sample->callback([&] {
        const Dataset a = load_dataset(s_in);
        std::size_t t = s_t;
        if (t == 0) {
            if (s_eps <= 0 || s_delta <= 0)
                throw std::invalid_argument("pass --t or both --eps and --delta");
            t = sample_size(s_eps, s_delta);
        }
        Rng rng(s_seed);
        const RowSample s = build_sample(a, t, rng);
        std::ofstream out(s_out);
        if (!out) throw std::runtime_error("cannot open " + s_out + " for writing");
        save_sample(s, out, s_seed);
        std::cout << "t=" << s.t << " n=" << s.n << " rate=" << num(s.rate()) << "\n";
    });

    // query
    auto* query_cmd = app.add_subcommand("query", "exact statistics on a dataset");
    std::string q_in, q_cols, q_pattern;
    double q_p = 0, q_phi = -1;
    bool q_exact = false, q_lp = false;
    std::uint64_t q_seed = 0;
    query_cmd->add_option("--in", q_in)->required();
    query_cmd->add_option("--cols", q_cols)->required();
    query_cmd->add_flag("--exact", q_exact);
    query_cmd->add_option("--p", q_p);
    query_cmd->add_option("--pattern", q_pattern);
    query_cmd->add_option("--phi", q_phi);
    query_cmd->add_flag("--lp-sample", q_lp);
    query_cmd->add_option("--seed", q_seed);
    query_cmd->callback([&] {
        const Dataset a = load_dataset(q_in);
        const ColumnQuery c = ColumnQuery::parse(q_cols);
        const FrequencyVector f = frequency_vector(a, c);
        if (!q_pattern.empty()) {
            const auto b = parse_word(q_pattern);
            std::cout << "f=" << point_frequency(f, b) << "\n";
        } else if (q_phi > 0) {
            std::cout << "heavy_hitters=";
            bool first = true;
            for (std::uint64_t id : heavy_hitters(f, q_p, q_phi)) {
                if (!first) std::cout << ",";
                std::cout << id;
                first = false;
            }
            std::cout << "\n";
        } else if (q_lp) {
            Rng rng(q_seed);
            const auto [id, prob] = lp_sample(f, q_p, rng);
            std::cout << "id=" << id << " prob=" << num(prob) << "\n";
        } else {
            std::cout << moment_label(q_p) << "=" << num(moment(f, q_p)) << "\n";
        }
    });

    // net-build
    auto* nb = app.add_subcommand("net-build", "precompute one sketch per net member");
    std::string nb_in, nb_out, nb_kind = "exact";
    double nb_alpha = 0.25, nb_p = 0, nb_eps = 0.5, nb_delta = 0.1;
    std::uint64_t nb_seed = 0;
    nb->add_option("--in", nb_in)->required();
    nb->add_option("--out", nb_out)->required();
    nb->add_option("--alpha", nb_alpha)->required();
    nb->add_option("--p", nb_p);
    nb->add_option("--sketch", nb_kind);
    nb->add_option("--eps", nb_eps);
    nb->add_option("--delta", nb_delta);
    nb->add_option("--seed", nb_seed);
    nb->callback([&] {
        const Dataset a = load_dataset(nb_in);
        AlphaNet net = build_net(static_cast<std::uint32_t>(a.cols()), nb_alpha);
        const std::size_t net_size = net.members.size();
        const SketchSpec spec = make_sketch_spec(parse_kind(nb_kind), nb_eps, nb_delta, net_size);
        build_sketchnet(a, std::move(net), spec, nb_p, nb_seed);  // validates parameters
        std::ostringstream meta;
        meta << "dataset=" << nb_in << "\n"
             << "alpha=" << num(nb_alpha) << "\n"
             << "p=" << num(nb_p) << "\n"
             << "sketch=" << nb_kind << "\n"
             << "eps=" << num(nb_eps) << "\n"
             << "delta=" << num(nb_delta) << "\n"
             << "seed=" << nb_seed << "\n"
             << "net_size=" << net_size << "\n";
        write_text(nb_out, meta.str());
        std::cout << "net_size=" << net_size << "\n";
    });

    // net-query
    auto* nq = app.add_subcommand("net-query", "answer a query from a prebuilt net");
    std::string nq_net, nq_cols;
    nq->add_option("--net", nq_net)->required();
    nq->add_option("--cols", nq_cols)->required();
    nq->callback([&] {
        const SketchNet snet = rebuild_net(read_kv(nq_net));
        const QueryResult r = query(snet, ColumnQuery::parse(nq_cols));
        std::cout << "estimate=" << num(r.estimate) << " used_subset=" << r.used_subset.to_string()
                  << " beta=" << num(r.beta) << " distortion=" << num(r.distortion) << "\n";
    });

    // code
    auto* code_cmd = app.add_subcommand("code", "enumerate all constant-weight words");
    std::uint32_t c_d = 0, c_k = 0;
    std::string c_out;
    code_cmd->add_option("--d", c_d)->required();
    code_cmd->add_option("--k", c_k)->required();
    code_cmd->add_option("--out", c_out);
    code_cmd->callback([&] {
        const Dataset ds = code_to_dataset(enumerate_constant_weight(c_d, c_k));
        if (c_out.empty()) save_dataset(ds, std::cout);
        else save_dataset(ds, c_out);
    });

    // code-random
    auto* cr = app.add_subcommand("code-random", "sample a bounded-intersection code");
    std::uint32_t cr_d = 0;
    double cr_eps = 0, cr_gamma = 0;
    std::size_t cr_size = 0;
    std::uint64_t cr_seed = 0;
    std::string cr_out;
    cr->add_option("--d", cr_d)->required();
    cr->add_option("--eps", cr_eps)->required();
    cr->add_option("--gamma", cr_gamma)->required();
    cr->add_option("--size", cr_size)->required();
    cr->add_option("--seed", cr_seed)->required();
    cr->add_option("--out", cr_out);
    cr->callback([&] {
        Rng rng(cr_seed);
        const Dataset ds = code_to_dataset(sample_random_code(cr_d, cr_eps, cr_gamma, cr_size, rng));
        if (cr_out.empty()) save_dataset(ds, std::cout);
        else save_dataset(ds, cr_out);
    });

    // reduce-alphabet
    auto* ra = app.add_subcommand("reduce-alphabet", "expand symbols into smaller-base digits");
    std::string ra_in, ra_out;
    std::uint32_t ra_q = 2;
    ra->add_option("--in", ra_in)->required();
    ra->add_option("--out", ra_out)->required();
    ra->add_option("--q-target", ra_q)->required();
    ra->callback([&] {
        const Dataset a = load_dataset(ra_in);
        const Dataset b = reduce_alphabet(a, ra_q);
        save_dataset(b, ra_out);
        std::cout << "n=" << b.rows() << " d=" << b.cols() << " q=" << b.alphabet()
                  << " width=" << reduce_width(a.alphabet(), ra_q) << "\n";
    });

    // tradeoff
    auto* to = app.add_subcommand("tradeoff", "space/approximation table for chosen alphas");
    std::uint32_t to_d = 0;
    std::string to_alphas;
    to->add_option("--d", to_d)->required();
    to->add_option("--alphas", to_alphas)->required();
    to->callback([&] {
        std::vector<double> alphas;
        std::stringstream ss(to_alphas);
        std::string part;
        while (std::getline(ss, part, ',')) alphas.push_back(std::stod(part));
        std::cout << "alpha,relative_space,approx_factor\n";
        for (const TradeoffRow& r : tradeoff_table(to_d, alphas))
            std::cout << sig3(r.alpha) << "," << sig3(r.relative_space) << ","
                      << sig3(r.approx_factor) << "\n";
    });

    // figure-data
    auto* fd = app.add_subcommand("figure-data", "uniform-alpha tradeoff grid");
    std::uint32_t fd_d = 0;
    std::uint32_t fd_grid = 99;
    fd->add_option("--d", fd_d)->required();
    fd->add_option("--grid", fd_grid)->check(CLI::Range(2u, 100000u));
    fd->callback([&] {
        std::vector<double> alphas;
        for (std::uint32_t i = 1; i <= fd_grid; ++i)
            alphas.push_back(0.5 * double(i) / double(fd_grid + 1));
        std::cout << "alpha,relative_space,approx_factor,log2_approx_factor\n";
        for (const TradeoffRow& r : tradeoff_table(fd_d, alphas))
            std::cout << sig6(r.alpha) << "," << sig6(r.relative_space) << ","
                      << sig6(r.approx_factor) << "," << sig6(std::log2(r.approx_factor)) << "\n";
    });

    // gen
    auto* gen = app.add_subcommand("gen", "emit a planted distinguishing instance");
    std::string g_problem, g_case = "in", g_out;
    std::uint32_t g_d = 0, g_k = 0, g_q = 0;
    double g_eps = 0.25, g_gamma = 0.125, g_p = 0.5;
    std::size_t g_t = 1;
    std::uint64_t g_seed = 0;
    bool g_verify = false;
    gen->add_option("--problem", g_problem)->required()
        ->check(CLI::IsMember({"f0", "f0-center", "hh", "fp", "lpsample"}));
    gen->add_option("--d", g_d)->required();
    gen->add_option("--k", g_k);
    gen->add_option("--q", g_q);
    gen->add_option("--eps", g_eps);
    gen->add_option("--gamma", g_gamma);
    gen->add_option("--p", g_p);
    gen->add_option("--t", g_t);
    gen->add_option("--case", g_case)->check(CLI::IsMember({"in", "out"}));
    gen->add_option("--seed", g_seed);
    gen->add_option("--out", g_out);
    gen->add_flag("--verify", g_verify);
    gen->callback([&] {
        Rng rng(g_seed);
        const bool in = g_case == "in";
        HardInstance inst;
        if (g_problem == "f0") {
            if (g_k == 0 || g_q == 0) throw std::invalid_argument("f0 needs --k and --q");
            inst = gen_f0(g_d, g_k, g_q, g_t, in, rng, g_verify);
        } else if (g_problem == "f0-center") {
            if (g_q == 0) throw std::invalid_argument("f0-center needs --q");
            inst = gen_f0_center(g_d, g_q, g_t, in, rng, g_verify);
        } else if (g_problem == "hh") {
            inst = gen_hh(g_d, g_eps, g_gamma, g_t, in, rng, g_verify);
        } else if (g_problem == "fp") {
            inst = gen_fp(g_d, g_eps, g_gamma, g_t, in, g_p, rng, g_verify);
        } else {
            inst = gen_lpsample(g_d, g_eps, g_gamma, g_t, in, g_p, rng, g_verify);
        }
        std::ostringstream meta;
        write_metadata(meta, inst);
        if (!g_out.empty()) {
            save_dataset(inst.data, g_out + ".data");
            write_text(g_out + ".meta", meta.str());
        }
        std::cout << meta.str();
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
