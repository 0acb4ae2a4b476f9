#include "radolab/threshold.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "radolab/subsets.hpp"

namespace rado {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

constexpr uint32_t kLaneInclude = 0;
constexpr uint32_t kLanePart = 1;

}  // namespace

RandomSetSample sample_binomial(int n, double p, uint64_t seed, uint32_t cell, uint32_t trial) {
    if (n < 0) throw validation_error("sample range must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw validation_error("inclusion probability must lie in [0, 1]");
    Philox g(seed);
    RandomSetSample s;
    s.n = n;
    s.seed = seed;
    for (int x = 1; x <= n; ++x)
        if (g.uniform(cell, trial, static_cast<uint32_t>(x), kLaneInclude) < p)
            s.included.push_back(x);
    return s;
}

RandomSetSample sample_weighted_partite(int n, double p, const WeightFunction& w, uint64_t seed,
                                        uint32_t cell, uint32_t trial) {
    if (n < 0) throw validation_error("sample range must be nonnegative");
    if (!(p > 0.0 && p <= 1.0)) throw validation_error("inclusion probability must lie in (0, 1]");
    int k = w.k;
    if (k < 1 || static_cast<int>(w.w.size()) != k)
        throw validation_error("weight function is empty or inconsistent");
    std::vector<double> thr(k);
    for (int i = 0; i < k; ++i) {
        if (w.w[i] < 1) throw validation_error("weights must be at least 1");
        // min() keeps the coupling with the plain sampler exact even if pow rounds up
        thr[i] = std::min(std::pow(p, w.w[i].convert_to<double>()), p);
    }
    Philox g(seed);
    RandomSetSample s;
    s.n = n;
    s.seed = seed;
    s.part.resize(n);
    for (int x = 1; x <= n; ++x) {
        double u = g.uniform(cell, trial, static_cast<uint32_t>(x), kLanePart);
        int xi = std::min(k - 1, static_cast<int>(u * k));
        s.part[x - 1] = xi;
        if (g.uniform(cell, trial, static_cast<uint32_t>(x), kLaneInclude) < thr[xi])
            s.included.push_back(x);
    }
    return s;
}

CoupledSample sample_coupled(int n, double p, const WeightFunction& w, uint64_t seed,
                             uint32_t cell, uint32_t trial) {
    return {sample_weighted_partite(n, p, w, seed, cell, trial),
            sample_binomial(n, p, seed, cell, trial)};
}

namespace {

// How a projection count X_I is evaluated per trial. When the complement of I
// indexes independent columns, the scan can pin exactly those coordinates, so
// restricted solutions correspond one to one with distinct I-keys and a leaf
// count suffices. Singletons fall back to a value bitmap filled by one full
// pass. Anything else would need per-key storage of a polynomial-size
// projection, which we refuse rather than approximate.
enum class RowMode { scan, singleton };

std::string set_string(const std::vector<int>& I) {
    std::string s = "{";
    for (size_t i = 0; i < I.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(I[i] + 1);
    }
    return s + "}";
}

}  // namespace

ConcentrationReport concentration_check(const RadoProfile& A, const WeightFunction& w, double q,
                                        int n, int trials, uint64_t seed, EnumerationOptions opt) {
    int k = A.matrix.cols;
    if (k < 1 || k > 20) throw validation_error("concentration check supports 1..20 columns");
    if (w.k != k) throw validation_error("weight function does not match the matrix");
    for (const auto& wi : w.w)
        if (wi < 1) throw validation_error("weights must be at least 1");
    if (!(q > 0.0 && q <= 1.0)) throw validation_error("q must lie in (0, 1]");
    if (n < 1) throw validation_error("n must be positive");
    if (trials < 1) throw validation_error("need at least one trial");

    if (std::pow(double(n), k - A.rank) > double(opt.edge_cap))
        throw budget_error("full streaming pass would exceed the edge cap at this n");

    uint32_t full = (1u << k) - 1;
    std::vector<RowMode> mode(full + 1, RowMode::scan);
    for (uint32_t mask = 1; mask <= full; ++mask) {
        auto comp = mask_complement_indices(mask, k);
        if (rank(column_submatrix(A.matrix, comp)) == static_cast<int>(comp.size())) continue;
        if (std::popcount(mask) == 1) {
            mode[mask] = RowMode::singleton;
            continue;
        }
        throw budget_error("projection keys for I = " + set_string(mask_to_indices(mask)) +
                           " admit no pinned evaluation; distinct-key storage would be needed");
    }

    // One unrestricted pass: total solution count plus, per coordinate, the
    // bitmap of values that occur there.
    std::vector<std::vector<char>> seen(k, std::vector<char>(n + 1, 0));
    long long total = 0;
    scan_solutions(A.matrix, n, std::vector<std::vector<int>>(k), [&](const int32_t* x) {
        ++total;
        for (int j = 0; j < k; ++j) seen[j][x[j]] = 1;
    });
    std::vector<long long> single(k, 0);
    for (int j = 0; j < k; ++j)
        single[j] = std::count(seen[j].begin(), seen[j].end(), char(1));

    ConcentrationReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.q = q;
    for (uint32_t mask = 1; mask <= full; ++mask) {
        ConcentrationRow row;
        row.I = mask_to_indices(mask);
        row.projection_count =
            mode[mask] == RowMode::singleton ? single[row.I[0]] : total;
        if (row.projection_count == 0)
            throw validation_error("no solutions project onto I = " + set_string(row.I) +
                                   " at n = " + std::to_string(n));
        double qw = std::pow(q, w.of_set(mask).convert_to<double>());
        row.threshold = 2.0 * qw * double(row.projection_count);
        row.small_regime = qw * double(row.projection_count) < 10.0;
        rep.rows.push_back(std::move(row));
    }

    for (int t = 0; t < trials; ++t) {
        auto s = sample_weighted_partite(n, q, w, seed, 0, static_cast<uint32_t>(t));
        std::vector<std::vector<int>> parts(k);
        for (int x : s.included) parts[s.part[x - 1]].push_back(x);

        for (auto& row : rep.rows) {
            uint32_t mask = 0;
            for (int i : row.I) mask |= 1u << i;
            // X_I never exceeds the projection count, so a threshold at or
            // above it makes the event certain.
            if (row.threshold >= double(row.projection_count)) {
                ++row.hits;
                continue;
            }
            long long X = 0;
            bool possible = true;
            for (int i : row.I)
                if (parts[i].empty()) possible = false;
            if (possible && mode[mask] == RowMode::singleton) {
                for (int v : parts[row.I[0]]) X += seen[row.I[0]][v];
            } else if (possible) {
                std::vector<std::vector<int>> domains(k);
                for (int i : row.I) domains[i] = parts[i];
                scan_solutions(A.matrix, n, domains, [&](const int32_t*) { ++X; });
            }
            if (double(X) <= row.threshold) ++row.hits;
        }
    }
    for (auto& row : rep.rows) row.frequency = double(row.hits) / double(trials);
    return rep;
}

namespace {

BigFloat eval_poly(const ExpPoly& poly, const BigFloat& qq) {
    BigFloat acc = 0;
    for (const auto& [expo, coef] : poly.terms)
        acc += coef.convert_to<BigFloat>() * pow(qq, expo.convert_to<BigFloat>());
    return acc;
}

}  // namespace

double ExpPoly::eval(const Rational& q) const {
    return eval_poly(*this, q.convert_to<BigFloat>()).convert_to<double>();
}

JansonReport janson_bound(const Hypergraph& h, const Rational& q, const WeightFunction& w) {
    int k = h.k;
    if (k < 1 || k > 20) throw validation_error("janson bound supports 1..20 columns");
    if (w.k != k) throw validation_error("weight function does not match the hypergraph");
    if (h.edge_count() == 0) throw validation_error("janson bound needs at least one edge");
    if (!(q > 0) || q > 1) throw validation_error("q must lie in (0, 1]");

    uint32_t full = (1u << k) - 1;
    long long e = static_cast<long long>(h.edge_count());
    Int kk = 1;
    for (int i = 0; i < k; ++i) kk *= k;
    Rational wfull = w.of_set(full);

    JansonReport rep;
    rep.mu.terms[wfull] = Rational(Int(e), kk);

    // Ordered pairs of edges agreeing on at least / exactly a given index set.
    std::vector<Projection> proj(full + 1);
    std::vector<long long> atleast(full + 1, 0), exact(full + 1, 0);
    for (uint32_t mask = 1; mask <= full; ++mask) {
        proj[mask] = project(h, mask_to_indices(mask));
        for (long long m : proj[mask].multiplicity) atleast[mask] += m * m;
    }
    for (uint32_t mask = full; mask >= 1; --mask) {
        long long over = 0;
        uint32_t rest = full ^ mask;
        for (uint32_t s = rest; s; s = (s - 1) & rest) over += exact[mask | s];
        exact[mask] = atleast[mask] - over;
    }
    // exact[full] is the diagonal e = f, which the pair sum excludes.
    for (uint32_t mask = 1; mask < full; ++mask) {
        if (!exact[mask]) continue;
        rep.big_delta.terms[2 * wfull - w.of_set(mask)] += Rational(Int(exact[mask]), Int(2));
    }

    // Largest number of distinct edges sharing a position-aligned value with
    // one edge, by inclusion-exclusion over the agreement set.
    long long dmax = 0;
    std::vector<int32_t> key;
    for (size_t ei = 0; ei < h.edge_count(); ++ei) {
        auto edge = h.edge(ei);
        long long touching = 0;
        for (uint32_t mask = 1; mask <= full; ++mask) {
            key.clear();
            for (int i : mask_to_indices(mask)) key.push_back(edge[i]);
            long long at = proj[mask].find({key.data(), key.size()});
            long long mult = at < 0 ? 0 : proj[mask].multiplicity[at];
            touching += (std::popcount(mask) & 1) ? mult : -mult;
        }
        dmax = std::max(dmax, touching - 1);
    }
    if (dmax) rep.small_delta.terms[wfull] = Rational(Int(dmax), kk);

    BigFloat qq = q.convert_to<BigFloat>();
    BigFloat mu = eval_poly(rep.mu, qq);
    BigFloat best = mu / 2;
    BigFloat bd = eval_poly(rep.big_delta, qq);
    if (bd > 0) {
        BigFloat cand = mu * mu / (8 * bd);
        if (cand < best) best = cand;
    }
    BigFloat sd = eval_poly(rep.small_delta, qq);
    if (sd > 0) {
        BigFloat cand = mu / (6 * sd);
        if (cand < best) best = cand;
    }
    rep.exponent = best.convert_to<double>();
    BigFloat bound = exp(BigFloat(-best));
    rep.bound = bound.convert_to<double>();
    return rep;
}

namespace {

void wilson_interval(ThresholdCell& cell) {
    int decided = cell.trials - cell.unknown;
    if (decided <= 0) {
        cell.ci_low = 0;
        cell.ci_high = 1;
        return;
    }
    double z = 1.959964;
    double nd = decided;
    double phat = double(cell.successes) / nd;
    double denom = 1 + z * z / nd;
    double centre = (phat + z * z / (2 * nd)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nd + z * z / (4 * nd * nd)) / denom;
    cell.ci_low = std::max(0.0, centre - half);
    cell.ci_high = std::min(1.0, centre + half);
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Heuristic premise checks at the largest grid point. Failures and evaluation
// problems become warnings on the curve, never errors: the scan itself is
// still a perfectly good experiment.
void preflight_checks(const ScanConfig& cfg, ThresholdCurve& curve) {
    if (cfg.matrices.size() < 2) return;
    int nmax = *std::max_element(cfg.n_grid.begin(), cfg.n_grid.end());

    Rational m2 = *cfg.matrices[1].m;
    double tau_d = cfg.cprime.convert_to<double>() *
                   std::pow(double(nmax), -1.0 / m2.convert_to<double>());
    tau_d = std::min(tau_d, 1.0);
    Int scaled = Int(std::llround(tau_d * 1e9));
    if (scaled == 0) scaled = 1;
    Rational tau(scaled, Int(1000000000));

    for (size_t i = 1; i < cfg.matrices.size(); ++i) {
        int ki = cfg.matrices[i].matrix.cols;
        double cap = cfg.epsilon / (12.0 * double(factorial(ki)));
        try {
            auto h = enumerate_solutions(cfg.matrices[i], nmax);
            auto rep = codegree_function(unordered_shadow(h), tau);
            double delta = rep.delta.convert_to<double>();
            if (delta > cap) {
                std::ostringstream msg;
                msg << "container premise fails for " << cfg.names[i] << " at n = " << nmax
                    << ": co-degree " << delta << " exceeds eps / 12 k! = " << cap
                    << " at tau = " << tau_d;
                curve.warnings.push_back(msg.str());
            }
        } catch (const std::runtime_error& err) {
            curve.warnings.push_back("co-degree preflight skipped for " + cfg.names[i] + ": " +
                                     err.what());
        }
    }

    int t = 0;
    for (size_t i = 1; i < cfg.matrices.size(); ++i)
        t = std::max(t, cfg.matrices[i].matrix.cols);
    int nz = std::min(nmax, 16);
    try {
        auto z = zeta_estimate(nz, cfg.matrices, 5'000'000);
        double need = double(factorial(t)) * cfg.epsilon;
        double zd = z.value.convert_to<double>();
        if (zd <= need) {
            std::ostringstream msg;
            msg << "supersaturation premise weak: zeta proxy at n = " << nz << " gives "
                << rat_pretty(z.value) << (z.exact ? "" : " (budget-limited)")
                << ", not above t! eps = " << need;
            curve.warnings.push_back(msg.str());
        }
    } catch (const std::runtime_error& err) {
        curve.warnings.push_back(std::string("zeta preflight skipped: ") + err.what());
    }
}

}  // namespace

ThresholdCurve threshold_scan(const ScanConfig& cfg0) {
    ScanConfig cfg = cfg0;
    size_t r = cfg.matrices.size();
    if (r == 0) throw validation_error("threshold scan needs at least one matrix");
    if (r > 31) throw validation_error("at most 31 colours are supported");
    if (cfg.names.empty())
        for (size_t i = 0; i < r; ++i) cfg.names.push_back("matrix-" + std::to_string(i + 1));
    if (cfg.names.size() != r) throw validation_error("names must align with matrices");
    if (cfg.n_grid.empty() || cfg.c_grid.empty()) throw validation_error("grids must be nonempty");
    for (int n : cfg.n_grid)
        if (n < 1) throw validation_error("grid n must be positive");
    for (const auto& c : cfg.c_grid)
        if (c <= 0) throw validation_error("grid constants must be positive");
    if (cfg.trials < 1) throw validation_error("need at least one trial per cell");
    if (cfg.oracle_budget < 1) throw validation_error("oracle budget must be positive");
    if (cfg.workers < 1) throw validation_error("workers must be positive");
    if (!(cfg.epsilon > 0)) throw validation_error("epsilon must be positive");
    if (cfg.cprime <= 0) throw validation_error("cprime must be positive");
    for (size_t i = 0; i < r; ++i)
        if (!cfg.matrices[i].rado_valid() || !cfg.matrices[i].m)
            throw validation_error("matrix " + cfg.names[i] + " has no density exponent");

    ThresholdCurve curve;

    std::vector<size_t> order(r);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return *cfg.matrices[a].m > *cfg.matrices[b].m; });
    bool permuted = false;
    for (size_t i = 0; i < r; ++i) permuted |= order[i] != i;
    if (permuted) {
        std::vector<RadoProfile> ms;
        std::vector<std::string> ns;
        for (size_t i : order) {
            ms.push_back(std::move(cfg.matrices[i]));
            ns.push_back(std::move(cfg.names[i]));
        }
        cfg.matrices = std::move(ms);
        cfg.names = std::move(ns);
        std::string joined;
        for (size_t i = 0; i < r; ++i) joined += (i ? ", " : "") + cfg.names[i];
        curve.warnings.push_back("matrices reordered densest first: " + joined);
    }
    curve.matrix_names = cfg.names;
    for (const auto& mprof : cfg.matrices) curve.m_values.push_back(*mprof.m);
    curve.m_pair = r >= 2 ? m_asym(cfg.matrices[0], cfg.matrices[1]).value : *cfg.matrices[0].m;

    preflight_checks(cfg, curve);

    double md = curve.m_pair.convert_to<double>();
    for (size_t in = 0; in < cfg.n_grid.size(); ++in) {
        for (size_t ic = 0; ic < cfg.c_grid.size(); ++ic) {
            ThresholdCell cell;
            cell.n = cfg.n_grid[in];
            cell.C = cfg.c_grid[ic];
            cell.trials = cfg.trials;
            double p = cell.C.convert_to<double>() * std::pow(double(cell.n), -1.0 / md);
            cell.capped = p > 1.0;
            cell.p = std::min(p, 1.0);
            uint32_t cell_index = static_cast<uint32_t>(in * cfg.c_grid.size() + ic);

            int nworkers = std::min<int>(cfg.workers, cfg.trials);
            std::vector<std::array<int, 3>> tally(nworkers, {0, 0, 0});
            std::vector<std::exception_ptr> errors(nworkers);
            auto run = [&](int wi) {
                try {
                    RamseyInstance inst;
                    inst.matrices = cfg.matrices;
                    for (int t = wi; t < cfg.trials; t += nworkers) {
                        auto s = sample_binomial(cell.n, cell.p, cfg.seed, cell_index,
                                                 static_cast<uint32_t>(t));
                        inst.ground = std::move(s.included);
                        auto v = decide_arrow(inst, cfg.oracle_budget, 1);
                        if (v.status == ArrowStatus::ramsey)
                            ++tally[wi][0];
                        else if (v.status == ArrowStatus::good_colouring)
                            ++tally[wi][1];
                        else
                            ++tally[wi][2];
                    }
                } catch (...) {
                    errors[wi] = std::current_exception();
                }
            };
            if (nworkers == 1) {
                run(0);
            } else {
                std::vector<std::thread> pool;
                for (int wi = 0; wi < nworkers; ++wi) pool.emplace_back(run, wi);
                for (auto& th : pool) th.join();
            }
            for (auto& err : errors)
                if (err) std::rethrow_exception(err);
            for (const auto& t : tally) {
                cell.successes += t[0];
                cell.unknown += t[2];
            }
            cell.incomplete = cell.unknown > 0;
            wilson_interval(cell);
            curve.cells.push_back(std::move(cell));
        }
    }
    return curve;
}

std::string curve_to_csv(const ThresholdCurve& curve) {
    std::ostringstream out;
    out << "n,C,p,trials,successes,unknown,ci_low,ci_high\n";
    out << std::setprecision(17);
    for (const auto& c : curve.cells)
        out << c.n << ',' << c.C.convert_to<double>() << ',' << c.p << ',' << c.trials << ','
            << c.successes << ',' << c.unknown << ',' << c.ci_low << ',' << c.ci_high << '\n';
    return out.str();
}

namespace {

// FNV-1a over the output-affecting config fields. Workers are excluded on
// purpose: they never change the results, so equal hashes mean equal curves.
std::string config_hash(const ScanConfig& cfg) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    for (const auto& name : cfg.names) mix(name);
    for (int n : cfg.n_grid) mix(std::to_string(n));
    for (const auto& c : cfg.c_grid) mix(rat_string(c));
    mix(std::to_string(cfg.trials));
    mix(std::to_string(cfg.seed));
    mix(std::to_string(cfg.oracle_budget));
    char eps[32];
    std::snprintf(eps, sizeof(eps), "%.17g", cfg.epsilon);
    mix(eps);
    mix(rat_string(cfg.cprime));
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

std::string scan_manifest(const ThresholdCurve& curve, const ScanConfig& cfg) {
    nlohmann::json j;
    j["config_hash"] = config_hash(cfg);
    j["matrices"] = curve.matrix_names;
    nlohmann::json mv = nlohmann::json::array();
    for (const auto& m : curve.m_values) mv.push_back(rat_string(m));
    j["m"] = mv;
    j["m_pair"] = rat_string(curve.m_pair);
    j["n_grid"] = cfg.n_grid;
    nlohmann::json cg = nlohmann::json::array();
    for (const auto& c : cfg.c_grid) cg.push_back(rat_string(c));
    j["c_grid"] = cg;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["oracle_budget"] = cfg.oracle_budget;
    j["workers"] = cfg.workers;
    j["epsilon"] = cfg.epsilon;
    j["cprime"] = rat_string(cfg.cprime);
    j["warnings"] = curve.warnings;
    j["cells"] = curve.cells.size();
    return j.dump(2) + "\n";
}

}  // namespace rado
