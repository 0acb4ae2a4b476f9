#include "radolab/ramsey.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "radolab/hypergraph.hpp"

namespace rado {

std::vector<int> ground_range(int n) {
    std::vector<int> g(std::max(n, 0));
    for (int i = 0; i < static_cast<int>(g.size()); ++i) g[i] = i + 1;
    return g;
}

namespace {

void check_ground(const std::vector<int>& ground) {
    for (size_t i = 0; i < ground.size(); ++i)
        if (ground[i] < 1 || (i && ground[i] <= ground[i - 1]))
            throw validation_error("ground set must be ascending positive integers");
}

// Unordered supports of the ordered solutions inside the ground set, as
// ascending position lists, weighted by how many ordered solutions share them.
struct SupportFamily {
    std::vector<std::vector<int>> pos;
    std::vector<long long> weight;

    bool operator==(const SupportFamily&) const = default;
};

SupportFamily build_supports(const RadoProfile& A, const std::vector<int>& ground) {
    SupportFamily fam;
    if (ground.empty()) return fam;
    int k = A.matrix.cols;
    std::vector<std::vector<int>> domains(k, ground);
    std::map<std::vector<int>, long long> acc;
    scan_solutions(A.matrix, ground.back(), domains, [&](const int32_t* x) {
        std::vector<int> s(x, x + k);
        std::sort(s.begin(), s.end());
        for (int& v : s)
            v = static_cast<int>(std::lower_bound(ground.begin(), ground.end(), v) -
                                 ground.begin());
        ++acc[s];
    });
    for (auto& [s, w] : acc) {
        fam.pos.push_back(s);
        fam.weight.push_back(w);
    }
    return fam;
}

struct ConstraintSet {
    int m = 0, r = 0;
    std::vector<int> colour;
    std::vector<std::vector<int>> pos;
    std::vector<long long> weight;
    std::vector<std::vector<int>> watch;  // ground position -> constraint ids
    std::vector<long long> total;         // ordered solutions per colour
    std::vector<int> root_candidates;     // one colour per distinct constraint family
};

ConstraintSet build_constraints(const std::vector<SupportFamily>& fams, int m) {
    ConstraintSet cs;
    cs.m = m;
    cs.r = static_cast<int>(fams.size());
    for (int c = 0; c < cs.r; ++c) {
        for (size_t i = 0; i < fams[c].pos.size(); ++i) {
            cs.colour.push_back(c);
            cs.pos.push_back(fams[c].pos[i]);
            cs.weight.push_back(fams[c].weight[i]);
        }
    }
    cs.watch.assign(m, {});
    for (size_t id = 0; id < cs.pos.size(); ++id)
        for (int p : cs.pos[id]) cs.watch[p].push_back(static_cast<int>(id));
    cs.total.assign(cs.r, 0);
    for (size_t id = 0; id < cs.pos.size(); ++id) cs.total[cs.colour[id]] += cs.weight[id];
    for (int c = 0; c < cs.r; ++c) {
        bool fresh = true;
        for (int c2 = 0; c2 < c && fresh; ++c2)
            if (fams[c2] == fams[c]) fresh = false;
        if (fresh) cs.root_candidates.push_back(c);
    }
    return cs;
}

enum EventKind { kAssign, kRemDec, kAliveClear, kBan, kMono };

struct Event {
    int kind, a, b;
};

// Shared trail-based state over a constraint set: remaining counts unassigned
// positions per constraint; alive means no position took a different colour.
struct SearchState {
    const ConstraintSet& cs;
    long long budget;
    std::vector<int> colour_of;
    std::vector<int> remaining;
    std::vector<char> alive;
    std::vector<Event> trail;
    long long nodes = 0;
    bool out_of_budget = false;

    SearchState(const ConstraintSet& cs_, long long budget_)
        : cs(cs_), budget(budget_), colour_of(cs_.m, -1), remaining(cs_.pos.size()),
          alive(cs_.pos.size(), 1) {
        for (size_t i = 0; i < cs.pos.size(); ++i)
            remaining[i] = static_cast<int>(cs.pos[i].size());
    }

    int next_unassigned() const {
        for (int p = 0; p < cs.m; ++p)
            if (colour_of[p] < 0) return p;
        return -1;
    }
};

struct ArrowSearch : SearchState {
    std::vector<uint32_t> banned;
    std::vector<std::pair<int, int>> forced;
    uint32_t full;

    ArrowSearch(const ConstraintSet& cs_, long long budget_)
        : SearchState(cs_, budget_), banned(cs_.m, 0), full((1u << cs_.r) - 1) {}

    bool ban(int q, int c) {
        uint32_t bit = 1u << c;
        if (banned[q] & bit) return true;
        banned[q] |= bit;
        trail.push_back({kBan, q, c});
        if (banned[q] == full) return false;
        if (std::popcount(banned[q]) == cs.r - 1)
            forced.push_back({q, std::countr_zero(full & ~banned[q])});
        return true;
    }

    bool assign(int p, int c) {
        ++nodes;
        if (nodes > budget) {
            out_of_budget = true;
            return false;
        }
        trail.push_back({kAssign, p, 0});
        colour_of[p] = c;
        bool ok = true;
        for (int cid : cs.watch[p]) {
            --remaining[cid];
            trail.push_back({kRemDec, cid, 0});
            if (!alive[cid]) continue;
            if (cs.colour[cid] != c) {
                alive[cid] = 0;
                trail.push_back({kAliveClear, cid, 0});
            } else if (remaining[cid] == 0) {
                ok = false;  // the whole solution went monochromatic
            } else if (remaining[cid] == 1) {
                int q = -1;
                for (int e : cs.pos[cid])
                    if (colour_of[e] < 0) {
                        q = e;
                        break;
                    }
                if (!ban(q, c)) ok = false;
            }
        }
        return ok;
    }

    bool settle() {
        while (!forced.empty()) {
            auto [q, c] = forced.back();
            forced.pop_back();
            if (colour_of[q] >= 0) continue;
            if (!assign(q, c)) return false;
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            Event e = trail.back();
            trail.pop_back();
            switch (e.kind) {
                case kAssign: colour_of[e.a] = -1; break;
                case kRemDec: ++remaining[e.a]; break;
                case kAliveClear: alive[e.a] = 1; break;
                default: banned[e.a] &= ~(1u << e.b); break;
            }
        }
    }

    // 0 good colouring found (left in colour_of), 1 subtree exhausted, 2 budget hit.
    int dfs() {
        int p = next_unassigned();
        if (p < 0) return 0;
        for (int c = 0; c < cs.r; ++c) {
            if (banned[p] & (1u << c)) continue;
            size_t mark = trail.size();
            if (assign(p, c) && settle()) {
                int sub = dfs();
                if (sub == 0) return 0;
                undo(mark);
                if (sub == 2) return 2;
            } else {
                forced.clear();
                undo(mark);
                if (out_of_budget) return 2;
            }
        }
        return 1;
    }
};

// Branch and bound for min over colourings of max_i scale_i * (weight of
// constraints gone fully monochromatic in colour i).
struct MinMaxSearch : SearchState {
    std::vector<Rational> scale;
    std::vector<long long> mono;
    Rational best;
    bool have_best = false;

    MinMaxSearch(const ConstraintSet& cs_, std::vector<Rational> scale_, long long budget_)
        : SearchState(cs_, budget_), scale(std::move(scale_)), mono(cs_.r, 0) {}

    Rational current() const {
        Rational cur = 0;
        for (int i = 0; i < cs.r; ++i) {
            if (mono[i] == 0) continue;
            Rational v = scale[i] * mono[i];
            if (v > cur) cur = v;
        }
        return cur;
    }

    bool assign(int p, int c) {
        ++nodes;
        if (nodes > budget) {
            out_of_budget = true;
            return false;
        }
        trail.push_back({kAssign, p, 0});
        colour_of[p] = c;
        for (int cid : cs.watch[p]) {
            --remaining[cid];
            trail.push_back({kRemDec, cid, 0});
            if (!alive[cid]) continue;
            if (cs.colour[cid] != c) {
                alive[cid] = 0;
                trail.push_back({kAliveClear, cid, 0});
            } else if (remaining[cid] == 0) {
                mono[c] += cs.weight[cid];
                trail.push_back({kMono, cid, 0});
            }
        }
        return true;
    }

    void undo(size_t mark) {
        while (trail.size() > mark) {
            Event e = trail.back();
            trail.pop_back();
            switch (e.kind) {
                case kAssign: colour_of[e.a] = -1; break;
                case kRemDec: ++remaining[e.a]; break;
                case kAliveClear: alive[e.a] = 1; break;
                default: mono[cs.colour[e.a]] -= cs.weight[e.a]; break;
            }
        }
    }

    void dfs() {
        if (have_best && best == 0) return;
        Rational cur = current();
        if (have_best && cur >= best) return;
        int p = next_unassigned();
        if (p < 0) {
            best = cur;
            have_best = true;
            return;
        }
        for (int c = 0; c < cs.r; ++c) {
            if (p == 0 && std::find(cs.root_candidates.begin(), cs.root_candidates.end(), c) ==
                              cs.root_candidates.end())
                continue;
            size_t mark = trail.size();
            if (!assign(p, c)) {
                undo(mark);
                return;
            }
            dfs();
            undo(mark);
            if (out_of_budget) return;
        }
    }
};

}  // namespace

long long count_monochromatic(const std::vector<int>& ground, const std::vector<int>& colouring,
                              const RadoProfile& A, int colour) {
    check_ground(ground);
    if (colouring.size() != ground.size())
        throw validation_error("colouring must cover the ground set");
    std::vector<int> cls;
    for (size_t i = 0; i < ground.size(); ++i)
        if (colouring[i] == colour) cls.push_back(ground[i]);
    int k = A.matrix.cols;
    if (static_cast<int>(cls.size()) < k) return 0;
    long long count = 0;
    std::vector<std::vector<int>> domains(k, cls);
    scan_solutions(A.matrix, cls.back(), domains, [&](const int32_t*) { ++count; });
    return count;
}

ArrowVerdict decide_arrow(const RamseyInstance& inst, long long node_budget, int workers) {
    auto t0 = std::chrono::steady_clock::now();
    check_ground(inst.ground);
    int r = static_cast<int>(inst.matrices.size());
    if (r < 1 || r > 31) throw validation_error("colour count must be between 1 and 31");
    if (node_budget < 1) throw validation_error("node budget must be positive");
    if (workers < 1) throw validation_error("worker count must be positive");
    int m = static_cast<int>(inst.ground.size());

    std::vector<SupportFamily> fams;
    for (const auto& prof : inst.matrices) fams.push_back(build_supports(prof, inst.ground));
    ConstraintSet cs = build_constraints(fams, m);

    auto finish = [&](ArrowVerdict out) {
        out.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (out.status == ArrowStatus::good_colouring)
            for (int i = 0; i < r; ++i)
                if (count_monochromatic(inst.ground, out.witness, inst.matrices[i], i) != 0)
                    throw std::logic_error("arrow search produced a bad witness");
        return out;
    };

    // A colour with no solutions at all can absorb every element.
    for (int i = 0; i < r; ++i) {
        if (cs.total[i] == 0) {
            ArrowVerdict v;
            v.status = ArrowStatus::good_colouring;
            v.witness.assign(m, i);
            return finish(v);
        }
    }

    const auto& roots = cs.root_candidates;
    long long per = std::max<long long>(1, node_budget / static_cast<long long>(roots.size()));
    std::vector<ArrowVerdict> sub(roots.size());
    auto run_branch = [&](size_t t) {
        ArrowSearch s(cs, per);
        int res;
        if (s.assign(0, roots[t]) && s.settle())
            res = s.dfs();
        else
            res = s.out_of_budget ? 2 : 1;
        ArrowVerdict out;
        out.nodes = s.nodes;
        if (res == 0) {
            out.status = ArrowStatus::good_colouring;
            out.witness = s.colour_of;
        } else {
            out.status = res == 1 ? ArrowStatus::ramsey : ArrowStatus::budget_exhausted;
        }
        sub[t] = std::move(out);
    };
    if (workers > 1 && roots.size() > 1) {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < roots.size(); ++t) pool.emplace_back(run_branch, t);
        for (auto& th : pool) th.join();
    } else {
        for (size_t t = 0; t < roots.size(); ++t) run_branch(t);
    }

    ArrowVerdict out;
    bool found = false, all_ramsey = true;
    for (const auto& s : sub) {
        out.nodes += s.nodes;
        if (!found && s.status == ArrowStatus::good_colouring) {
            found = true;
            out.witness = s.witness;
        }
        if (s.status != ArrowStatus::ramsey) all_ramsey = false;
    }
    out.status = found             ? ArrowStatus::good_colouring
                 : all_ramsey      ? ArrowStatus::ramsey
                                   : ArrowStatus::budget_exhausted;
    return finish(out);
}

SupersaturationResult supersaturation_scan(int n, int r, const RadoProfile& A,
                                           long long node_budget) {
    if (n < 0 || n > 64) throw validation_error("supersaturation scan is limited to n <= 64");
    if (r < 1 || r > 31) throw validation_error("colour count must be between 1 and 31");
    if (node_budget < 1) throw validation_error("node budget must be positive");
    std::vector<SupportFamily> fams(r, build_supports(A, ground_range(n)));
    ConstraintSet cs = build_constraints(fams, n);
    MinMaxSearch s(cs, std::vector<Rational>(r, Rational(1)), node_budget);
    s.dfs();
    if (!s.have_best) throw budget_error("node budget too small to finish any colouring");
    SupersaturationResult res;
    res.exact = !s.out_of_budget;
    res.value = rat_num(s.best).convert_to<long long>();
    return res;
}

ZetaResult zeta_estimate(int n, const std::vector<RadoProfile>& matrices,
                         long long node_budget) {
    if (n < 0 || n > 64) throw validation_error("zeta estimate is limited to n <= 64");
    int r = static_cast<int>(matrices.size());
    if (r < 1 || r > 31) throw validation_error("colour count must be between 1 and 31");
    if (node_budget < 1) throw validation_error("node budget must be positive");
    std::vector<SupportFamily> fams;
    for (const auto& prof : matrices) fams.push_back(build_supports(prof, ground_range(n)));
    ConstraintSet cs = build_constraints(fams, n);
    std::vector<Rational> scale;
    for (int i = 0; i < r; ++i) {
        if (cs.total[i] == 0)
            throw validation_error("a colour has no solutions in the ground set");
        scale.push_back(Rational(Int(1), Int(cs.total[i])));
    }
    MinMaxSearch s(cs, std::move(scale), node_budget);
    s.dfs();
    if (!s.have_best) throw budget_error("node budget too small to finish any colouring");
    return {s.best, !s.out_of_budget};
}

std::string format_colouring(const std::vector<int>& ground, const std::vector<int>& colouring) {
    if (ground.size() != colouring.size())
        throw validation_error("colouring must cover the ground set");
    std::string out;
    for (size_t i = 0; i < ground.size(); ++i) {
        out += std::to_string(ground[i]);
        out += ' ';
        out += std::to_string(colouring[i] + 1);
        out += '\n';
    }
    return out;
}

std::string format_verdict(const ArrowVerdict& v, const std::vector<int>& ground) {
    nlohmann::json doc;
    doc["verdict"] = v.status == ArrowStatus::ramsey            ? "ramsey"
                     : v.status == ArrowStatus::good_colouring  ? "good-colouring"
                                                                : "budget-exhausted";
    doc["nodes"] = v.nodes;
    doc["seconds"] = v.seconds;
    if (v.status == ArrowStatus::good_colouring)
        doc["witness"] = format_colouring(ground, v.witness);
    return doc.dump();
}

}  // namespace rado
