#include "sg/report.hpp"

namespace sg {

using nlohmann::json;

const char* tool_version() { return "0.1.0"; }

std::string input_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 15];
        h >>= 4;
    }
    return out;
}

json report_header(const std::string& command, const std::string& digest,
                   long long vertex_budget) {
    json j;
    j["tool"] = "sg";
    j["version"] = tool_version();
    j["command"] = command;
    j["input_digest"] = digest;
    j["budgets"] = {{"vertices", vertex_budget}};
    return j;
}

json ratio_section(const RatioSequence& seq) {
    json values = json::array();
    for (const Rat& v : seq.values) values.push_back(rat_str(v));
    return {{"kind", seq.kind == RatioSequence::Kind::Sphere ? "sphere" : "ball"},
            {"r_max", seq.r_max},
            {"values", values}};
}

json delta_section(const DeltaEstimate& est) {
    return {{"estimate", rat_str(est.last)},
            {"nonincreasing", est.certificate},
            {"slack", rat_str(est.slack)},
            {"bracket", {rat_str(est.bracket_lo), rat_str(est.bracket_hi)}}};
}

json cogrowth_section(const CogrowthSeries& series) {
    json counts = json::array();
    for (const Int& c : series.counts) counts.push_back(int_str(c));
    json cumulative = json::array();
    for (const Int& c : series.cumulative) cumulative.push_back(int_str(c));
    return {{"counts", counts},
            {"cumulative", cumulative},
            {"root_estimates_float", series.root_estimates}};
}

json census_section(const LocalStatistics& stats) {
    json census = json::object();
    for (const auto& [key, freq] : stats.census) census[key_hex(key)] = rat_str(freq);
    return {{"radius", stats.radius}, {"sample_size", stats.sample_size}, {"census", census}};
}

json walk_section(const WalkStats& stats) {
    return {{"steps", stats.steps},      {"trials", stats.trials},
            {"seed", stats.seed},        {"returns", stats.returns},
            {"frequency_float", stats.frequency}, {"label", stats.label}};
}

json stitch_section(const StitchReport& report) {
    return {{"removed", report.removed},
            {"repaired", report.repaired},
            {"loops_added", report.loops_added},
            {"chords_added", report.chords_added},
            {"dropped_disconnected", report.dropped_disconnected}};
}

json bound_section(const GrowthBoundParams& params, const GrowthBound& bound) {
    json bounds = json::array();
    for (const Rat& b : bound.bounds) bounds.push_back(rat_str(b));
    return {{"n", params.n},
            {"k", params.k},
            {"ell", params.ell()},
            {"epsilon", rat_str(params.epsilon)},
            {"r", params.r},
            {"t_plus_float", bound.t_plus},
            {"t_minus_float", bound.t_minus},
            {"dominant_decay_float", bound.dominant_decay},
            {"bounds", bounds}};
}

std::string report_text(const json& report) { return report.dump(2) + "\n"; }

}  // namespace sg
