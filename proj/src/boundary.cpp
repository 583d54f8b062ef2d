#include "sg/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sg/words.hpp"

namespace sg {

namespace {

constexpr double kRecurrentThreshold = 0.9;
constexpr double kTransientThreshold = 0.5;
const Rat kConservativeThreshold = Rat(1, 1000);

Int pow_int(Int base, int exp) {
    Int result = 1;
    for (int i = 0; i < exp; ++i) result *= base;
    return result;
}

}  // namespace

RatioSequence boundary_ratios(const BallSource& source, int r_max) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    RatioSequence seq;
    seq.kind = RatioSequence::Kind::Sphere;
    seq.r_max = r_max;
    std::vector<long long> spheres = sphere_sizes(source, r_max);
    for (int r = 0; r <= r_max; ++r)
        seq.values.push_back(Rat(Int(spheres[r]), sphere_size(source.rank(), r)));
    for (int r = 1; r <= r_max; ++r)
        if (seq.values[r] > seq.values[r - 1])
            throw AnalysisError("sphere ratios increased at radius " + std::to_string(r) +
                                "; the source does not present a Schreier graph");
    return seq;
}

RatioSequence ball_ratios(const BallSource& source, int r_max) {
    if (r_max < 0) throw std::invalid_argument("r_max must be >= 0");
    RatioSequence seq;
    seq.kind = RatioSequence::Kind::Ball;
    seq.r_max = r_max;
    std::vector<long long> spheres = sphere_sizes(source, r_max);
    long long total = 0;
    for (int r = 0; r <= r_max; ++r) {
        total += spheres[r];
        seq.values.push_back(Rat(Int(total), ball_size(source.rank(), r)));
    }
    return seq;
}

DeltaEstimate delta_measure_estimate(const RatioSequence& seq) {
    if (seq.values.size() < 2) throw std::invalid_argument("need at least two ratios");
    DeltaEstimate est;
    est.last = seq.values.back();
    est.certificate = true;
    for (std::size_t i = 1; i < seq.values.size(); ++i)
        if (seq.values[i] > seq.values[i - 1]) est.certificate = false;
    est.slack = seq.values[seq.values.size() - 2] - est.last;
    est.bracket_hi = est.last;
    est.bracket_lo = est.last > est.slack ? est.last - est.slack : Rat(0);
    return est;
}

CogrowthSeries cogrowth_series(const BallSource& source, int r_max) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    const BallView b = source.ball(std::max(1, r_max / 2));
    const int V = b.vertex_count();
    const int slots = 2 * b.rank;

    CogrowthSeries series;
    series.counts.assign(r_max + 1, 0);
    series.counts[0] = 1;

    // weight[v * slots + s] = number of non-backtracking paths root -> v of
    // the current length whose final letter fills slot s.
    std::vector<Int> weight(static_cast<std::size_t>(V) * slots, 0);
    for (int s = 0; s < slots; ++s) {
        int v = b.step(0, s);
        if (v >= 0) weight[static_cast<std::size_t>(v) * slots + s] += 1;
    }
    for (int s = 0; s < slots; ++s) series.counts[1] += weight[s];  // paths back at vertex 0

    std::vector<Int> next(weight.size());
    for (int r = 2; r <= r_max; ++r) {
        std::fill(next.begin(), next.end(), Int(0));
        for (int v = 0; v < V; ++v)
            for (int s = 0; s < slots; ++s) {
                const Int& w = weight[static_cast<std::size_t>(v) * slots + s];
                if (w == 0) continue;
                for (int t = 0; t < slots; ++t) {
                    if (t == inverse_slot(s)) continue;
                    int u = b.step(v, t);
                    if (u >= 0) next[static_cast<std::size_t>(u) * slots + t] += w;
                }
            }
        weight.swap(next);
        for (int s = 0; s < slots; ++s) series.counts[r] += weight[s];
    }

    Int total = 0;
    for (int r = 0; r <= r_max; ++r) {
        total += series.counts[r];
        series.cumulative.push_back(total);
    }
    series.root_estimates.push_back(1.0);
    for (int r = 1; r <= r_max; ++r)
        series.root_estimates.push_back(
            std::pow(series.cumulative[r].convert_to<double>(), 1.0 / r));
    return series;
}

GrowthBound growth_bound(const GrowthBoundParams& params) {
    if (params.k < 2) throw std::domain_error("cycle length must be >= 2");
    if (params.n < 1 || params.r < 0 || params.m_max < 0)
        throw std::domain_error("bad growth-bound parameters");
    if (params.epsilon <= 0 || params.epsilon > 1)
        throw std::domain_error("cycle density must lie in (0, 1]");
    const int ell = params.ell();
    const Int growth = pow_int(2 * params.n - 1, ell);  // (2n-1)^l
    const Rat eps = params.epsilon;
    if (eps >= Rat(growth)) throw std::domain_error("cycle density >= (2n-1)^l");

    const Rat q = Rat(growth) - eps;  // trace of the companion matrix
    const double disc = std::sqrt(rat_double(q * q + 4 * eps * eps));
    GrowthBound out;
    out.t_plus = (rat_double(q) + disc) / 2;
    out.t_minus = (rat_double(q) - disc) / 2;
    out.dominant_decay = out.t_plus / growth.convert_to<double>();

    // Power sums p_m = t_plus^m + t_minus^m obey p_{m+1} = q p_m + eps^2 p_{m-1},
    // so the bounds stay exact rationals.
    const Rat scale = Rat(sphere_size(params.n, params.r)) / 2;
    Rat p_prev = 2, p_cur = q;
    out.bounds.push_back(scale * p_prev);
    if (params.m_max >= 1) out.bounds.push_back(scale * p_cur);
    for (int m = 2; m <= params.m_max; ++m) {
        Rat p_next = q * p_cur + eps * eps * p_prev;
        p_prev = p_cur;
        p_cur = p_next;
        out.bounds.push_back(scale * p_cur);
    }
    return out;
}

Classification classify_conservativity(const BallSource& source, int r_max) {
    if (r_max < 2) throw std::invalid_argument("r_max must be >= 2");
    RatioSequence seq = boundary_ratios(source, r_max);
    Classification result;
    result.delta = delta_measure_estimate(seq);
    const auto& v = seq.values;
    const std::size_t k = v.size();
    if (k >= 3 && v[k - 1] == v[k - 2] && v[k - 2] == v[k - 3] && v[k - 1] > 0)
        result.label = "dissipative-part-positive";
    else if (v[k - 1] == 0 || v[k - 1] < kConservativeThreshold)
        result.label = "conservative-consistent";
    else
        result.label = "inconclusive";
    return result;
}

WalkStats srw_return_stats(const BallSource& source, long long steps, long long trials,
                           std::uint64_t seed) {
    if (steps < 1 || trials < 1) throw std::invalid_argument("steps and trials must be >= 1");
    WalkStats stats;
    stats.steps = steps;
    stats.trials = trials;
    stats.seed = seed;
    const int slots = 2 * source.rank();
    for (long long trial = 0; trial < trials; ++trial) {
        std::unique_ptr<Walker> walker = source.make_walker();
        walker->reset();
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        for (long long i = 0; i < steps; ++i) {
            walker->step(static_cast<int>(rng() % slots));
            if (walker->at_root()) {
                ++stats.returns;
                break;
            }
        }
    }
    stats.frequency = static_cast<double>(stats.returns) / static_cast<double>(trials);
    if (stats.frequency >= kRecurrentThreshold)
        stats.label = "recurrent-like";
    else if (stats.frequency <= kTransientThreshold)
        stats.label = "transient-like";
    else
        stats.label = "inconclusive";
    return stats;
}

}  // namespace sg
