#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "radolab/ramsey.hpp"
#include "radolab/threshold.hpp"
#include "radolab/weights.hpp"

using namespace rado;

namespace {

struct CheckArgs {
    std::vector<std::string> names;
    bool asym = false;
    std::string out;
};

struct AuditArgs {
    std::string name;
    std::vector<int> grid;
    std::string boundedness;
    int tameness_n = 0;
    int codegree_n = 0;
    std::string tau = "1/2";
};

struct ScanArgs {
    std::vector<std::string> names;
    std::vector<int> n_grid;
    std::vector<std::string> c_grid;
    int trials = 100;
    uint64_t seed = 0;
    long long budget = 10'000'000;
    double epsilon = 0.01;
    std::string cprime = "1";
    int workers = 1;
    std::string out;
    std::string format = "csv";
};

struct ArrowArgs {
    std::vector<std::string> names;
    int n = 0;
    int r = 0;
    long long budget = 1'000'000'000;
    int workers = 1;
};

std::string ones_based(const std::vector<int>& idx) {
    std::string s = "{";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i] + 1);
    }
    return s + "}";
}

std::string mask_set(uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; mask; ++i, mask >>= 1)
        if (mask & 1u) {
            if (!first) s += ",";
            s += std::to_string(i + 1);
            first = false;
        }
    return s + "}";
}

RadoProfile load_profile(const std::string& name) { return make_profile(catalogue_matrix(name)); }

void print_profile(const std::string& name, const RadoProfile& p) {
    std::cout << "== " << name << " ==\n";
    std::cout << "  rows " << p.original.rows << ", cols " << p.original.cols << ", rank "
              << p.rank;
    if (p.dropped_rows) std::cout << " (dropped " << p.dropped_rows << " dependent rows)";
    std::cout << "\n";
    if (p.partition_regular)
        std::cout << "  partition-regular: yes, certificate " << format_certificate(*p.certificate)
                  << "\n";
    else
        std::cout << "  partition-regular: no\n";
    switch (p.irredundancy.verdict) {
        case SearchVerdict::confirmed: {
            std::cout << "  distinct-entry solution: (";
            for (size_t i = 0; i < p.irredundancy.witness.size(); ++i)
                std::cout << (i ? ", " : "") << p.irredundancy.witness[i];
            std::cout << ")\n";
            break;
        }
        case SearchVerdict::refuted_up_to_bound:
            std::cout << "  distinct-entry solution: none up to "
                      << p.irredundancy.search_bound << "\n";
            break;
        case SearchVerdict::unknown:
            std::cout << "  distinct-entry solution: unknown\n";
            break;
    }
    if (p.m)
        std::cout << "  m = " << rat_pretty(*p.m) << ", maximiser W = " << ones_based(p.m_maximiser)
                  << "\n";
    else
        std::cout << "  m: undefined (needs partition regularity and a distinct-entry solution)\n";
}

int cmd_check(const CheckArgs& args) {
    std::vector<RadoProfile> profiles;
    bool all_valid = true;
    for (const auto& name : args.names) {
        profiles.push_back(load_profile(name));
        print_profile(name, profiles.back());
        all_valid &= profiles.back().rado_valid();
    }
    if (args.asym) {
        if (profiles.size() != 2)
            throw validation_error("--asym needs exactly two matrices, densest first");
        auto d = m_asym(profiles[0], profiles[1]);
        std::cout << "m(" << args.names[0] << ", " << args.names[1]
                  << ") = " << rat_pretty(d.value) << ", maximiser W = " << ones_based(d.maximiser)
                  << "\n";
        auto w = solve_weights(profiles[0], profiles[1]);
        std::cout << "weights: " << weights_to_json(w) << "\n";
        auto ms = minimiser_sets(w, profiles[0], profiles[1]);
        std::cout << "minimisers: " << ms.minimisers.size() << " index sets, "
                  << (ms.proper ? "proper" : "not proper")
                  << ", min value " << rat_pretty(ms.min_value) << "\n";
        if (!args.out.empty()) {
            std::filesystem::create_directories(args.out);
            auto path = std::filesystem::path(args.out) / "weights.json";
            std::ofstream f(path);
            f << weights_to_json(w) << "\n";
            if (!f) throw std::runtime_error("cannot write " + path.string());
            std::cout << "wrote " << path.string() << "\n";
        }
    }
    return all_valid ? 0 : 2;
}

int cmd_audit(const AuditArgs& args) {
    auto profile = load_profile(args.name);
    auto audit = projection_count_audit(profile, args.grid);

    std::cout << "projection growth for " << args.name << " on grid {";
    for (size_t i = 0; i < audit.grid.size(); ++i)
        std::cout << (i ? "," : "") << audit.grid[i];
    std::cout << "}\n";
    std::cout << "  I | exponent | slope | counts\n";
    for (const auto& row : audit.rows) {
        char slope[32];
        std::snprintf(slope, sizeof(slope), "%.4f", row.slope);
        std::cout << "  " << ones_based(row.I) << " | " << row.expected_exponent << " | " << slope
                  << " |";
        for (long long c : row.counts) std::cout << " " << c;
        std::cout << "\n";
    }

    if (args.tameness_n > 0) {
        auto h = enumerate_solutions(profile, args.tameness_n);
        std::cout << "tameness constant at n = " << args.tameness_n << ": "
                  << rat_pretty(tameness_constant(h)) << "\n";
    }
    if (args.codegree_n > 0) {
        Rational tau = parse_rational(args.tau);
        auto h = enumerate_solutions(profile, args.codegree_n);
        auto rep = codegree_function(unordered_shadow(h), tau);
        std::cout << "co-degree at n = " << args.codegree_n << ", tau = " << rat_pretty(tau)
                  << ": delta = " << rat_pretty(rep.delta) << ", average degree "
                  << rat_pretty(rep.avg_degree) << "\n";
        for (size_t j = 0; j < rep.delta_j.size(); ++j)
            std::cout << "  delta_" << j + 2 << " = " << rat_pretty(rep.delta_j[j]) << "\n";
    }
    if (!args.boundedness.empty()) {
        auto second = load_profile(args.boundedness);
        auto w = solve_weights(profile, second);
        auto rep = boundedness_audit(profile, second, w, args.grid);
        std::cout << "boundedness of (" << args.name << ", " << args.boundedness
                  << ") with weights " << weights_to_json(w) << "\n";
        char line[128];
        for (const auto& pt : rep.points) {
            std::snprintf(line, sizeof(line), "  n %d: log min %.4f, argmin I = ", pt.n,
                          pt.log_min);
            std::cout << line << mask_set(pt.argmin_mask) << "\n";
        }
        std::snprintf(line, sizeof(line), "  slope %.4f, expected %.4f, deviation %.4f\n",
                      rep.slope, rep.expected, rep.deviation);
        std::cout << line;
    }
    return 0;
}

int cmd_scan(const ScanArgs& args) {
    ScanConfig cfg;
    cfg.names = args.names;
    for (const auto& name : args.names) cfg.matrices.push_back(load_profile(name));
    cfg.n_grid = args.n_grid;
    for (const auto& c : args.c_grid) cfg.c_grid.push_back(parse_rational(c));
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.oracle_budget = args.budget;
    cfg.epsilon = args.epsilon;
    cfg.cprime = parse_rational(args.cprime);
    cfg.workers = args.workers;

    auto curve = threshold_scan(cfg);
    for (const auto& wmsg : curve.warnings) std::cerr << "warning: " << wmsg << "\n";

    auto csv = curve_to_csv(curve);
    auto manifest = scan_manifest(curve, cfg);

    if (args.format == "json") {
        auto j = nlohmann::json::parse(manifest);
        auto rows = nlohmann::json::array();
        for (const auto& c : curve.cells) {
            nlohmann::json row;
            row["n"] = c.n;
            row["C"] = rat_string(c.C);
            row["p"] = c.p;
            row["capped"] = c.capped;
            row["incomplete"] = c.incomplete;
            row["trials"] = c.trials;
            row["successes"] = c.successes;
            row["unknown"] = c.unknown;
            row["ci_low"] = c.ci_low;
            row["ci_high"] = c.ci_high;
            rows.push_back(row);
        }
        j["rows"] = rows;
        std::string doc = j.dump(2) + "\n";
        if (args.out.empty()) {
            std::cout << doc;
        } else {
            std::filesystem::create_directories(args.out);
            auto path = std::filesystem::path(args.out) / "curve.json";
            std::ofstream f(path);
            f << doc;
            if (!f) throw std::runtime_error("cannot write " + path.string());
            std::cout << "wrote " << path.string() << "\n";
        }
        return 0;
    }

    if (args.out.empty()) {
        std::cout << csv << manifest;
    } else {
        std::filesystem::create_directories(args.out);
        auto csv_path = std::filesystem::path(args.out) / "curve.csv";
        auto man_path = std::filesystem::path(args.out) / "manifest.json";
        std::ofstream cf(csv_path);
        cf << csv;
        if (!cf) throw std::runtime_error("cannot write " + csv_path.string());
        std::ofstream mf(man_path);
        mf << manifest;
        if (!mf) throw std::runtime_error("cannot write " + man_path.string());
        std::cout << "wrote " << csv_path.string() << "\nwrote " << man_path.string() << "\n";
    }
    return 0;
}

int cmd_arrow(const ArrowArgs& args) {
    if (args.n < 1) throw validation_error("--n must be positive");
    std::vector<RadoProfile> profiles;
    for (const auto& name : args.names) profiles.push_back(load_profile(name));
    if (profiles.size() == 1 && args.r > 1)
        profiles.resize(args.r, profiles[0]);
    RamseyInstance inst{ground_range(args.n), std::move(profiles)};
    auto v = decide_arrow(inst, args.budget, args.workers);
    std::cout << format_verdict(v, inst.ground) << "\n";
    return v.status == ArrowStatus::budget_exhausted ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for Rado solution hypergraphs and random-set thresholds"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "validate matrices and report densities");
    check_cmd->add_option("matrix", check.names, "catalogue names or matrix files")
        ->required()
        ->expected(-1);
    check_cmd->add_flag("--asym", check.asym, "treat the two matrices as an ordered pair");
    check_cmd->add_option("--out", check.out, "directory for the solved weights document");

    AuditArgs audit;
    auto* audit_cmd = app.add_subcommand("audit", "projection growth and boundedness tables");
    audit_cmd->add_option("matrix", audit.name, "catalogue name or matrix file")->required();
    audit_cmd->add_option("--n-grid,--grid", audit.grid, "comma-separated n grid")
        ->required()
        ->delimiter(',');
    audit_cmd->add_option("--boundedness", audit.boundedness,
                          "second matrix: audit the weighted minimum growth of the pair");
    audit_cmd->add_option("--tameness", audit.tameness_n, "report the tameness constant at this n");
    audit_cmd->add_option("--codegree", audit.codegree_n,
                          "report the container co-degree function at this n");
    audit_cmd->add_option("--tau", audit.tau, "tau for --codegree (rational, default 1/2)");

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "Monte-Carlo threshold curve");
    scan_cmd->add_option("--matrix", scan.names, "colour matrices, densest first")->required();
    scan_cmd->add_option("--n-grid", scan.n_grid, "comma-separated n grid")
        ->required()
        ->delimiter(',');
    scan_cmd->add_option("--c-grid", scan.c_grid, "comma-separated rational constants")
        ->required()
        ->delimiter(',');
    scan_cmd->add_option("--trials", scan.trials, "trials per cell (default 100)");
    scan_cmd->add_option("--seed", scan.seed, "master seed")->required();
    scan_cmd->add_option("--budget", scan.budget, "oracle node budget per trial");
    scan_cmd->add_option("--epsilon", scan.epsilon, "preflight slack");
    scan_cmd->add_option("--cprime", scan.cprime, "preflight tau constant (rational)");
    scan_cmd->add_option("--workers", scan.workers, "concurrent trials (outputs unaffected)");
    scan_cmd->add_option("--out", scan.out, "output directory (default: stdout)");
    scan_cmd->add_option("--format", scan.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    ArrowArgs arrow;
    auto* arrow_cmd = app.add_subcommand("arrow", "decide [n] -> (A_1, ..., A_r)");
    arrow_cmd->add_option("--matrix", arrow.names, "colour matrices")->required();
    arrow_cmd->add_option("--n", arrow.n, "ground set is [n]")->required();
    arrow_cmd->add_option("--r", arrow.r, "replicate a single matrix to r colours");
    arrow_cmd->add_option("--budget", arrow.budget, "search node budget");
    arrow_cmd->add_option("--workers", arrow.workers, "concurrent branches (verdict unaffected)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*check_cmd) return cmd_check(check);
        if (*audit_cmd) return cmd_audit(audit);
        if (*scan_cmd) return cmd_scan(scan);
        if (*arrow_cmd) return cmd_arrow(arrow);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const budget_error& e) {
        std::cerr << "budget refusal: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
