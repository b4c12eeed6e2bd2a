#include "aos/polyblock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace aos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VertexOrder {
    bool operator()(const Vertex& a, const Vertex& b) const {
        if (a.value != b.value) return a.value < b.value;
        return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                            b.coords.begin(), b.coords.end());
    }
};

double coord_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double ss = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        ss += d * d;
    }
    return std::sqrt(ss);
}

bool elementwise_leq(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

void validate(const PolyblockConfig& c) {
    if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(c.delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (c.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    if (!(c.feas_tol >= 0.0)) throw std::invalid_argument("feas_tol must be nonnegative");
}

MonotoneObjective bank_objective(const SourceBank& bank) {
    return [&bank](const std::vector<double>& coords) {
        return sum_objective(AllocationVector(coords), bank);
    };
}

std::vector<Vertex> sorted_copy(const std::multiset<Vertex, VertexOrder>& set) {
    return {set.begin(), set.end()};
}

}  // namespace

Vertex make_vertex(std::vector<double> coords, const MonotoneObjective& objective) {
    Vertex v{std::move(coords), 0.0};
    v.value = objective(v.coords);
    return v;
}

Vertex make_vertex(std::vector<double> coords, const SourceBank& bank) {
    return make_vertex(std::move(coords), bank_objective(bank));
}

Vertex project(const Vertex& v, const MonotoneObjective& objective) {
    const double s = coord_sum(v.coords);
    if (!(s > 0.0)) throw std::invalid_argument("cannot project the zero vector");
    const double phi = std::min(1.0, 1.0 / s);
    if (phi == 1.0) return v;
    std::vector<double> scaled(v.coords.size());
    for (std::size_t k = 0; k < scaled.size(); ++k) scaled[k] = v.coords[k] * phi;
    return make_vertex(std::move(scaled), objective);
}

Vertex project(const Vertex& v, const SourceBank& bank) {
    return project(v, bank_objective(bank));
}

std::vector<Vertex> children(const Vertex& v, const Vertex& v_proj,
                             const MonotoneObjective& objective) {
    std::vector<Vertex> out;
    out.reserve(v.coords.size());
    for (std::size_t k = 0; k < v.coords.size(); ++k) {
        std::vector<double> c = v.coords;
        c[k] = v_proj.coords[k];
        out.push_back(make_vertex(std::move(c), objective));
    }
    return out;
}

std::vector<Vertex> children(const Vertex& v, const Vertex& v_proj, const SourceBank& bank) {
    return children(v, v_proj, bank_objective(bank));
}

PolyblockResult polyblock_minimize(int n_vars, const MonotoneObjective& objective,
                                   const PolyblockConfig& config,
                                   const PolyblockObserver& observer) {
    validate(config);
    if (n_vars < 1) throw std::invalid_argument("need at least one variable");

    std::multiset<Vertex, VertexOrder> vplus;
    std::multiset<Vertex, VertexOrder> vminus;  // kept only for the observer
    vplus.insert(make_vertex(std::vector<double>(static_cast<std::size_t>(n_vars), 1.0), objective));

    double ub = kInf;
    double lb = -kInf;
    std::vector<double> best;
    std::int64_t iters = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;

    auto note_feasible = [&](const Vertex& v) {
        if (observer) vminus.insert(v);
        if (v.value < ub) {
            ub = v.value;
            best = v.coords;
        }
    };

    while (!vplus.empty()) {
        const Vertex candidate = *vplus.begin();
        lb = std::max(lb, std::min(candidate.value, ub));
        if (ub < kInf && ub - lb <= config.epsilon) {
            converged = true;
            break;
        }
        if (iters >= config.max_iters) break;
        ++iters;
        vplus.erase(vplus.begin());

        if (coord_sum(candidate.coords) <= 1.0 + config.feas_tol) {
            // Cannot occur after initialization under this constraint (only
            // the all-ones start may be feasible, when n_vars == 1), but a
            // feasible candidate's box holds nothing better than itself.
            note_feasible(candidate);
            if (config.record_trace) trace.push_back({iters, lb, ub, vplus.size()});
            continue;
        }

        const Vertex proj = project(candidate, objective);
        note_feasible(proj);

        const std::vector<Vertex> kids = children(candidate, proj, objective);
        for (const Vertex& child : kids) {
            if (coord_sum(child.coords) <= 1.0 + config.feas_tol) {
                note_feasible(child);
                continue;
            }
            if (!(child.value < ub)) continue;
            if (!(distance(child.coords, candidate.coords) > config.delta)) continue;
            if (config.dominance_cleanup) {
                const bool redundant = std::any_of(vplus.begin(), vplus.end(), [&](const Vertex& v) {
                    return elementwise_leq(child.coords, v.coords);
                });
                if (redundant) continue;
                for (auto it = vplus.begin(); it != vplus.end();)
                    it = elementwise_leq(it->coords, child.coords) ? vplus.erase(it) : std::next(it);
            }
            vplus.insert(child);
        }

        const double front = vplus.empty() ? ub : vplus.begin()->value;
        lb = std::max(lb, std::min(front, ub));
        if (config.record_trace) trace.push_back({iters, lb, ub, vplus.size()});
        if (observer)
            observer(IterationSnapshot{iters, candidate, proj, kids, sorted_copy(vplus),
                                       sorted_copy(vminus), lb, ub});
    }

    if (vplus.empty()) {
        // Nothing of the enclosure is left outside the feasible set.
        lb = ub;
        converged = true;
    }
    if (best.empty()) throw std::logic_error("polyblock search ended without a feasible point");

    return PolyblockResult{AllocationVector(best), ub,    lb,       ub - lb,
                           iters,                  converged, std::move(trace)};
}

PolyblockResult polyblock_solve(const SourceBank& bank, const PolyblockConfig& config,
                                const PolyblockObserver& observer) {
    return polyblock_minimize(bank.size(), bank_objective(bank), config, observer);
}

AllocationVector equal_split_baseline(int n_sources) {
    if (n_sources < 1) throw std::invalid_argument("need at least one source");
    return AllocationVector(
        std::vector<double>(static_cast<std::size_t>(n_sources), 1.0 / n_sources));
}

namespace {

/// Visits every point of the budget face {sum lambda = 1} on a uniform grid
/// with m = round(1/step) subdivisions, in lexicographically ascending order.
template <typename Fn>
void for_each_face_point(int K, double step, Fn&& fn) {
    if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("grid step must lie in (0, 1]");
    const std::int64_t m = std::llround(1.0 / step);
    double points = 1.0;  // C(m + K - 1, K - 1)
    for (int i = 1; i < K; ++i) points = points * (static_cast<double>(m) + i) / i;
    if (points > 1e7) throw std::invalid_argument("face grid exceeds the 10^7-point guard");

    std::vector<double> coords(static_cast<std::size_t>(K), 0.0);
    auto rec = [&](auto&& self, int k, std::int64_t remaining) -> void {
        if (k == K - 1) {
            coords[static_cast<std::size_t>(k)] =
                static_cast<double>(remaining) / static_cast<double>(m);
            fn(coords);
            return;
        }
        for (std::int64_t i = 0; i <= remaining; ++i) {
            coords[static_cast<std::size_t>(k)] = static_cast<double>(i) / static_cast<double>(m);
            self(self, k + 1, remaining - i);
        }
    };
    rec(rec, 0, m);
}

}  // namespace

AllocationVector bf_winner_baseline(const SourceBank& bank) {
    const auto K = static_cast<std::size_t>(bank.size());
    double best_score = -kInf;
    std::vector<double> best;
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<double> corner(K, 0.0);
        corner[k] = 1.0;
        double score = 0.0;
        for (std::size_t j = 0; j < K; ++j)
            score += mismatch_fraction(SamplingRate(corner[j]), bank.sources[j]);
        const bool better = score > best_score ||
                            (score == best_score &&
                             std::lexicographical_compare(corner.begin(), corner.end(),
                                                          best.begin(), best.end()));
        if (better) {
            best_score = score;
            best = std::move(corner);
        }
    }
    return AllocationVector(best);
}

GridOracleResult grid_oracle(const SourceBank& bank, double step) {
    double best_value = kInf;
    std::vector<double> best;
    for_each_face_point(bank.size(), step, [&](const std::vector<double>& coords) {
        const double value = sum_objective(AllocationVector(coords), bank);
        if (value < best_value) {
            best_value = value;
            best = coords;
        }
    });
    return {AllocationVector(best), best_value};
}

}  // namespace aos
