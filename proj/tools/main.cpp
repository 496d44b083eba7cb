// dsai: exact solver, kernelizer and instance generator for Dominating Set
// parameterized above a maximal r-independent set.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "dsai/dp_solver.hpp"
#include "dsai/errors.hpp"
#include "dsai/generators.hpp"
#include "dsai/io.hpp"
#include "dsai/kernelizer.hpp"
#include "dsai/nbhd_classes.hpp"
#include "dsai/oracle.hpp"

namespace {

using dsai::Vertex;
using nlohmann::json;

// Machine-output schema version, bumped on breaking JSON changes.
constexpr int kJsonSchema = 1;

json one_based(const std::vector<Vertex>& vs) {
    json out = json::array();
    for (Vertex v : vs) out.push_back(v + 1);
    return out;
}

std::vector<Vertex> parse_id_list(const std::string& text) {
    std::vector<Vertex> out;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        out.push_back(std::stoi(token) - 1);
    }
    return out;
}

void write_witness_file(const std::string& path, const std::vector<Vertex>& witness) {
    std::ofstream out(path);
    if (!out) throw dsai::InputError("cannot open '" + path + "' for writing");
    for (Vertex v : witness) out << v + 1 << '\n';
}

std::vector<Vertex> read_witness_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dsai::InputError("cannot open '" + path + "'");
    std::vector<Vertex> out;
    long id;
    while (in >> id) out.push_back(static_cast<Vertex>(id - 1));
    return out;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct SolveArgs {
    std::string input, witness_path, algo = "dp";
    bool serial = false;
    int threads = 0, mask_guard = 20, residual_guard = 24;
};

int cmd_solve(const SolveArgs& args) {
    auto inst = dsai::read_instance_file(args.input);
    dsai::validate_instance(inst);
    json out;
    out["schema"] = kJsonSchema;
    std::vector<Vertex> witness;
    if (args.algo == "oracle") {
        auto sol = dsai::ds_exact(inst.graph);
        witness = sol.witness;
        out["ds_size"] = sol.size;
        out["verdict"] = sol.size <= inst.budget ? "YES" : "NO";
    } else {
        dsai::SolveOptions opts;
        opts.threads = args.threads;
        opts.mask_width_guard = args.mask_guard;
        opts.residual_guard = args.residual_guard;
        dsai::SolveResult res;
        if (args.serial)
            res = dsai::solve_dp_serial(inst, opts);
        else if (args.algo == "xp")
            res = dsai::solve_xp(inst, opts);
        else
            res = dsai::solve_dp(inst, opts);
        witness = res.witness;
        out["ds_size"] = res.ds_size;
        out["verdict"] = res.within_budget ? "YES" : "NO";
        json covered = json::array();
        for (std::size_t f = 0; f < res.branch.trace_family.size(); ++f)
            if (res.branch.covered_guess >> f & 1)
                covered.push_back(one_based(res.branch.trace_family[f]));
        out["branch"] = {{"D_R", one_based(res.branch.residual_choice)}, {"covered", covered}};
        out["branches_evaluated"] = res.branches_evaluated;
    }
    out["algo"] = args.algo;
    out["witness"] = one_based(witness);
    std::cout << out.dump() << '\n';
    if (!args.witness_path.empty()) write_witness_file(args.witness_path, witness);
    return out["verdict"] == "YES" ? 0 : 1;
}

struct KernelArgs {
    std::string input, output, report_path;
    int tau = 0, rprime_cap = 4, threads = 0;
    bool strict_paper = false;
};

int cmd_kernelize(const KernelArgs& args) {
    auto inst = dsai::read_instance_file(args.input);
    dsai::KernelConfig cfg;
    cfg.tau = args.tau;
    cfg.rprime_cap = args.rprime_cap;
    cfg.strict_paper_keep = args.strict_paper;
    cfg.threads = args.threads;
    auto report = dsai::kernelize(inst, cfg);
    dsai::write_instance_file(args.output, report.reduced);
    json j = dsai::to_json(report);
    j["schema"] = kJsonSchema;
    if (args.report_path.empty()) {
        std::cout << j.dump() << '\n';
    } else {
        std::ofstream out(args.report_path);
        if (!out) throw dsai::InputError("cannot open '" + args.report_path + "' for writing");
        out << j.dump(2) << '\n';
        std::cout << j["verdict"].get<std::string>() << " offset=" << report.offset << " n "
                  << report.n_before << " -> " << report.n_after << '\n';
    }
    return 0;
}

struct GenerateArgs {
    std::string kind, cnf, input, output, sidecar;
    bool apex = false;
    int n = 10, radius = 3, degree_bound = 4, oracle_cutoff = 20;
    double edge_prob = 0.2, keep_prob = 0.6;
    std::string model = "gnp";
    std::uint64_t seed = 1;
};

int cmd_generate(const GenerateArgs& args) {
    if ((args.kind == "3sat" || args.kind == "34sat") && args.cnf.empty())
        throw dsai::InputError("generate " + args.kind + " needs --cnf");
    if (args.kind == "colourful" && args.input.empty())
        throw dsai::InputError("generate colourful needs --input");
    dsai::Instance inst;
    std::optional<dsai::GadgetMap> map;
    if (args.kind == "3sat") {
        auto f = dsai::read_dimacs_cnf_file(args.cnf);
        auto [i, m] = args.apex ? dsai::apex_from_planar_3sat(f) : dsai::from_3sat(f);
        inst = std::move(i);
        map = std::move(m);
    } else if (args.kind == "34sat") {
        auto f = dsai::read_dimacs_cnf_file(args.cnf);
        auto [i, m] = dsai::from_34sat(f);
        inst = std::move(i);
        map = std::move(m);
    } else if (args.kind == "colourful") {
        auto c = dsai::read_colourful_file(args.input);
        auto [i, m] = dsai::from_colourful(c, args.radius);
        inst = std::move(i);
        map = std::move(m);
    } else { // random
        dsai::RandomConfig cfg;
        cfg.n = args.n;
        cfg.radius = args.radius;
        cfg.seed = args.seed;
        cfg.edge_prob = args.edge_prob;
        cfg.keep_prob = args.keep_prob;
        cfg.degree_bound = args.degree_bound;
        cfg.oracle_cutoff = args.oracle_cutoff;
        if (args.model == "planar")
            cfg.model = dsai::RandomModel::planar;
        else if (args.model == "maxdeg")
            cfg.model = dsai::RandomModel::max_degree;
        inst = dsai::random_instance(cfg);
    }
    dsai::write_instance_file(args.output, inst);
    if (!args.sidecar.empty() && map) {
        std::ofstream out(args.sidecar);
        if (!out) throw dsai::InputError("cannot open '" + args.sidecar + "' for writing");
        out << dsai::to_json(*map, args.kind).dump(2) << '\n';
    }
    std::cerr << "wrote " << args.output << " (n=" << inst.graph.vertex_count()
              << ", m=" << inst.graph.edge_count() << ", |X|=" << inst.x_set.size()
              << ", p=" << inst.budget << ")\n";
    return 0;
}

struct VerifyArgs {
    std::string input, witness_path;
    int tau = 0;
};

int cmd_verify(const VerifyArgs& args) {
    auto inst = dsai::read_instance_file(args.input);
    auto violations = dsai::instance_violations(inst);
    json out;
    out["schema"] = kJsonSchema;
    out["valid"] = violations.empty();
    out["violations"] = violations;
    out["n"] = inst.graph.vertex_count();
    out["m"] = inst.graph.edge_count();
    out["radius"] = inst.radius;
    out["budget"] = inst.budget;
    out["x_size"] = inst.x_set.size();
    if (violations.empty()) {
        auto decomp = dsai::decompose(inst);
        out["r_size"] = decomp.residual.size();
        std::vector<Vertex> ground;
        {
            std::vector<char> in_x(inst.graph.vertex_count(), 0);
            for (Vertex x : inst.x_set) in_x[x] = 1;
            for (const auto& ball : decomp.ball)
                for (Vertex v : ball)
                    if (!in_x[v]) ground.push_back(v);
        }
        auto part = dsai::partition_by_trace(inst.graph, ground, decomp.residual);
        const int tau = args.tau > 0 ? args.tau : std::max(1, dsai::degeneracy(inst.graph));
        out["twin_report"] = dsai::to_json(dsai::twin_bound_report(part, tau));
    }
    int exit_code = violations.empty() ? 0 : 2;
    if (!args.witness_path.empty() && violations.empty()) {
        auto witness = read_witness_file(args.witness_path);
        const bool dominates = dsai::is_dominating(inst.graph, witness);
        const bool within = static_cast<int>(witness.size()) <= inst.budget;
        out["witness_size"] = witness.size();
        out["witness_dominates"] = dominates;
        out["witness_within_budget"] = within;
        out["witness_ok"] = dominates && within;
        if (!(dominates && within)) exit_code = 1;
    }
    std::cout << out.dump() << '\n';
    return exit_code;
}

struct OracleArgs {
    std::string kind, input, cnf, witness_path;
    std::vector<std::string> groups;
    std::string exempt;
    int cap = -1;
};

int cmd_oracle(const OracleArgs& args) {
    json out;
    out["schema"] = kJsonSchema;
    int exit_code = 0;
    if (args.kind == "ds") {
        auto inst = dsai::read_instance_file(args.input);
        auto sol = dsai::ds_exact(inst.graph);
        out["ds_size"] = sol.size;
        out["witness"] = one_based(sol.witness);
        if (!args.witness_path.empty()) write_witness_file(args.witness_path, sol.witness);
    } else if (args.kind == "annotated") {
        auto inst = dsai::read_instance_file(args.input);
        dsai::AnnotatedInstance ann;
        ann.graph = inst.graph;
        ann.exempt = parse_id_list(args.exempt);
        for (const auto& g : args.groups) ann.required_groups.push_back(parse_id_list(g));
        if (args.cap >= 0) ann.size_cap = args.cap;
        auto sol = dsai::annotated_ds_exact(ann);
        out["feasible"] = sol.has_value();
        if (sol) {
            out["size"] = sol->size;
            out["witness"] = one_based(sol->witness);
        } else {
            exit_code = 1;
        }
    } else if (args.kind == "colourful") {
        auto c = dsai::read_colourful_file(args.input);
        auto sol = dsai::colourful_ds_exact(c);
        out["feasible"] = sol.has_value();
        if (sol)
            out["witness"] = one_based(*sol);
        else
            exit_code = 1;
    } else { // sat
        auto f = dsai::read_dimacs_cnf_file(args.cnf);
        auto sol = dsai::sat_brute(f);
        out["satisfiable"] = sol.has_value();
        if (sol) {
            json assignment = json::array();
            for (bool b : *sol) assignment.push_back(b);
            out["assignment"] = assignment;
        } else {
            exit_code = 1;
        }
    }
    std::cout << out.dump() << '\n';
    return exit_code;
}

struct BenchArgs {
    std::string corpus, out_path;
    int oracle_guard = 64;
    int threads = 0;
};

int cmd_bench(const BenchArgs& args) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(args.corpus))
        if (entry.path().extension() == ".dsai") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::ofstream csv(args.out_path);
    if (!csv) throw dsai::InputError("cannot open '" + args.out_path + "' for writing");
    csv << "instance,n,m,x_size,r_size,branches,dp_ms,dp_serial_ms,kernel_shrink,oracle_ms,"
           "agree\n";

    for (const auto& path : files) {
        try {
            auto inst = dsai::read_instance_file(path.string());
            dsai::validate_instance(inst);
            auto decomp = dsai::decompose(inst);
            csv << path.filename().string() << ',' << inst.graph.vertex_count() << ','
                << inst.graph.edge_count() << ',' << inst.x_set.size() << ','
                << decomp.residual.size() << ',';

            std::string branches = "", dp_ms = "", dp_serial_ms = "", shrink = "";
            std::string oracle_ms = "", agree = "";
            std::optional<int> dp_size;
            if (inst.radius >= 3) {
                dsai::SolveOptions opts;
                opts.threads = args.threads;
                auto t0 = std::chrono::steady_clock::now();
                auto res = dsai::solve_dp(inst, opts);
                dp_ms = std::to_string(elapsed_ms(t0));
                branches = std::to_string(res.branches_evaluated);
                dp_size = res.ds_size;

                auto t1 = std::chrono::steady_clock::now();
                auto serial = dsai::solve_dp_serial(inst, opts);
                dp_serial_ms = std::to_string(elapsed_ms(t1));
                if (serial.ds_size != res.ds_size)
                    throw std::logic_error("serial and parallel solvers disagree");

                auto report = dsai::kernelize(inst);
                shrink = std::to_string(
                    1.0 - static_cast<double>(report.n_after) /
                              std::max(1, report.n_before));
            }
            if (inst.graph.vertex_count() <= args.oracle_guard) {
                auto t2 = std::chrono::steady_clock::now();
                auto sol = dsai::ds_exact(inst.graph);
                oracle_ms = std::to_string(elapsed_ms(t2));
                if (dp_size) agree = *dp_size == sol.size ? "true" : "false";
            }
            csv << branches << ',' << dp_ms << ',' << dp_serial_ms << ',' << shrink << ','
                << oracle_ms << ',' << agree << '\n';
        } catch (const std::exception& e) {
            std::cerr << path.filename().string() << ": " << e.what() << '\n';
        }
    }
    std::cerr << "wrote " << args.out_path << " (" << files.size() << " instances)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("DSAI_THREADS")) {
#ifdef _OPENMP
        const int cap = std::atoi(env);
        if (cap > 0) omp_set_num_threads(cap);
#else
        (void)env;
#endif
    }

    CLI::App app{"Dominating Set above a maximal r-independent set: exact solver, "
                 "kernelizer, oracles and instance generators"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "decide an instance and report the optimum");
    solve->add_option("--input", solve_args.input)->required();
    solve->add_option("--algo", solve_args.algo)->check(CLI::IsMember({"dp", "xp", "oracle"}));
    solve->add_option("--witness", solve_args.witness_path);
    solve->add_option("--threads", solve_args.threads);
    solve->add_flag("--serial", solve_args.serial, "use the sequential reference driver");
    solve->add_option("--mask-guard", solve_args.mask_guard);
    solve->add_option("--residual-guard", solve_args.residual_guard);

    KernelArgs kernel_args;
    auto* kern = app.add_subcommand("kernelize", "reduce an instance, reporting the offset");
    kern->add_option("--input", kernel_args.input)->required();
    kern->add_option("--output", kernel_args.output)->required();
    kern->add_option("--report", kernel_args.report_path);
    kern->add_option("--tau", kernel_args.tau);
    kern->add_option("--rprime-cap", kernel_args.rprime_cap);
    kern->add_flag("--strict-paper", kernel_args.strict_paper);
    kern->add_option("--threads", kernel_args.threads);

    GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "build gadget or random instances");
    gen->add_option("kind", gen_args.kind)
        ->required()
        ->check(CLI::IsMember({"3sat", "34sat", "colourful", "random"}));
    gen->add_option("--cnf", gen_args.cnf);
    gen->add_option("--input", gen_args.input);
    gen->add_option("--output", gen_args.output)->required();
    gen->add_option("--sidecar", gen_args.sidecar);
    gen->add_flag("--apex", gen_args.apex);
    gen->add_option("--n", gen_args.n);
    gen->add_option("--radius", gen_args.radius);
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--model", gen_args.model)->check(CLI::IsMember({"gnp", "planar", "maxdeg"}));
    gen->add_option("--edge-prob", gen_args.edge_prob);
    gen->add_option("--keep-prob", gen_args.keep_prob);
    gen->add_option("--max-deg", gen_args.degree_bound);
    gen->add_option("--oracle-cutoff", gen_args.oracle_cutoff);

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "validate an instance and optional witness");
    verify->add_option("--input", verify_args.input)->required();
    verify->add_option("--witness", verify_args.witness_path);
    verify->add_option("--tau", verify_args.tau);

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle", "run a ground-truth solver directly");
    oracle->add_option("kind", oracle_args.kind)
        ->required()
        ->check(CLI::IsMember({"ds", "annotated", "colourful", "sat"}));
    oracle->add_option("--input", oracle_args.input);
    oracle->add_option("--cnf", oracle_args.cnf);
    oracle->add_option("--witness", oracle_args.witness_path);
    oracle->add_option("--exempt", oracle_args.exempt, "comma-separated 1-based ids");
    oracle->add_option("--group", oracle_args.groups, "comma-separated 1-based ids, repeatable");
    oracle->add_option("--cap", oracle_args.cap);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run the corpus benchmark table");
    bench->add_option("--corpus", bench_args.corpus)->required();
    bench->add_option("--out", bench_args.out_path)->required();
    bench->add_option("--oracle-guard", bench_args.oracle_guard);
    bench->add_option("--threads", bench_args.threads);

    try {
        app.parse(argc, argv);
        if (*solve) return cmd_solve(solve_args);
        if (*kern) return cmd_kernelize(kernel_args);
        if (*gen) return cmd_generate(gen_args);
        if (*verify) return cmd_verify(verify_args);
        if (*oracle) return cmd_oracle(oracle_args);
        if (*bench) return cmd_bench(bench_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const dsai::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& v : e.violations) std::cerr << "  - " << v << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
