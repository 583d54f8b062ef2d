#pragma once
// Boundary-action quantities: sphere/ball ratio sequences against the free
// group, the fundamental-domain measure estimate and conservativity label,
// cogrowth via non-backtracking closed-path counting, the cycle-density
// growth-bound recurrence, and the random-walk return heuristic.
#include <string>
#include <vector>

#include "sg/graph.hpp"
#include "sg/rational.hpp"

namespace sg {

struct RatioSequence {
    enum class Kind { Sphere, Ball };
    Kind kind = Kind::Sphere;
    int r_max = 0;
    std::vector<Rat> values;  // index r = 0..r_max, each in [0,1]
};

// |sphere_r(graph)| / |sphere_r(free group)| for r = 0..r_max. Exact.
// Asserts the sequence is nonincreasing (throws AnalysisError otherwise —
// a violation indicates a defective source).
RatioSequence boundary_ratios(const BallSource& source, int r_max);

// Ball-count analogue; shares the sphere sequence's limit.
RatioSequence ball_ratios(const BallSource& source, int r_max);

// Upper bound for the fundamental-domain measure read off a sphere-ratio
// sequence, with a stabilization indicator (difference of the last two
// values) and the bracket [last - slack, last] clamped at 0.
struct DeltaEstimate {
    Rat last = 0;
    bool certificate = false;  // sequence verified nonincreasing
    Rat slack = 0;
    Rat bracket_lo = 0;
    Rat bracket_hi = 0;
};

DeltaEstimate delta_measure_estimate(const RatioSequence& seq);

struct CogrowthSeries {
    std::vector<Int> counts;       // c_r = closed reduced paths of length r; c_0 = 1
    std::vector<Int> cumulative;   // |H intersect ball_r|
    std::vector<double> root_estimates;  // cumulative^(1/r); entry 0 is 1 by convention
};

// Counts reduced words fixing the root by a non-backtracking transfer DP
// over states (vertex, last letter slot). Closed paths of length <= r_max
// stay inside the radius-floor(r_max/2) ball, so only that ball is read.
CogrowthSeries cogrowth_series(const BallSource& source, int r_max);

struct GrowthBoundParams {
    int n = 2;        // free group rank
    int k = 2;        // cycle length; every vertex is assumed to lie on one
    Rat epsilon = 1;  // cycle density, in (0, 1]
    int r = 1;        // initial radius
    int m_max = 20;   // number of recurrence steps
    int ell() const { return k / 2; }
};

// Roots and iterates of the sphere-growth recurrence
//   X_{r+(m+1)l} <= ((2n-1)^l - eps) X_{r+ml} + eps^2 X_{r+(m-1)l}.
struct GrowthBound {
    double t_plus = 0;   // dominant characteristic root, < (2n-1)^l
    double t_minus = 0;  // subdominant root, negative
    double dominant_decay = 0;  // t_plus / (2n-1)^l, < 1
    std::vector<Rat> bounds;    // bounds[m] = (f(r)/2)(t_plus^m + t_minus^m), exact
};

// Throws std::domain_error when eps >= (2n-1)^l or k < 2.
GrowthBound growth_bound(const GrowthBoundParams& params);

struct Classification {
    DeltaEstimate delta;
    std::string label;  // conservative-consistent | dissipative-part-positive | inconclusive
};

// dissipative-part-positive: last three sphere ratios equal and positive.
// conservative-consistent: last ratio 0 or below 1e-3. Else inconclusive.
Classification classify_conservativity(const BallSource& source, int r_max);

struct WalkStats {
    long long steps = 0;
    long long trials = 0;
    std::uint64_t seed = 0;
    long long returns = 0;
    double frequency = 0;
    std::string label;  // recurrent-like | transient-like | inconclusive
};

// Uniform random walk over the 2n edge slots from the root; counts trials
// that revisit the root within `steps` steps. Heuristic thresholds:
// frequency >= 0.9 recurrent-like, <= 0.5 transient-like.
WalkStats srw_return_stats(const BallSource& source, long long steps, long long trials,
                           std::uint64_t seed);

}  // namespace sg
