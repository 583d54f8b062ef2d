// sg: Schreier-graph subgroup analyzer.
// Exit codes: 0 success, 1 analysis failure, 2 parse/usage error, 3 budget.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sg/boundary.hpp"
#include "sg/density.hpp"
#include "sg/errors.hpp"
#include "sg/report.hpp"
#include "sg/sgf.hpp"
#include "sg/sofic.hpp"
#include "sg/subgroups.hpp"

namespace {

using nlohmann::json;
using namespace sg;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw AnalysisError("cannot write file: " + path);
    out << text;
}

// Flag > environment > default.
long long resolve_vertex_budget(long long flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SG_BUDGET_VERTICES")) {
        try {
            long long v = std::stoll(env);
            if (v <= 0) throw std::invalid_argument("nonpositive");
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad SG_BUDGET_VERTICES value: " + std::string(env));
        }
    }
    return kDefaultVertexBudget;
}

// Accepts "p/q", integers, and decimal literals like "0.5".
Rat parse_rat_or_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || s.find('/') != std::string::npos) return parse_rat(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-") throw std::invalid_argument("bad number: " + s);
    Int den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    try {
        return Rat(Int(digits), den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number: " + s);
    }
}

SchreierGraph require_complete(const SgfData& data, const std::string& path) {
    if (!data.complete())
        throw AnalysisError(path + " is not a complete Schreier graph");
    return *data.graph;
}

int run_validate(const std::string& path) {
    SgfData data = parse_sgf(slurp(path));
    std::vector<Violation> violations = validate(data.partial);
    if (violations.empty()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const Violation& v : violations) std::cout << v.describe() << "\n";
    return 1;
}

void run_sample(const std::string& spec_path, const std::string& out,
                std::optional<std::uint64_t> seed, long long budget, long long max_cosets) {
    SubgroupSpec spec = parse_subgroup_spec(slurp(spec_path));
    if (seed) {
        spec.seed = *seed;
        spec.flip_seed = *seed;
    }
    SchreierGraph g = finite_graph_from_spec(spec, budget, max_cosets);
    emit(out, write_sgf(g));
}

void run_cosets(const std::string& spec_path, const std::string& out, long long max_cosets) {
    SubgroupSpec spec = parse_subgroup_spec(slurp(spec_path));
    if (spec.kind != SubgroupSpec::Kind::Generators)
        throw ParseError("cosets needs a generators-kind subgroup spec");
    SchreierGraph g = coset_enumerate(spec.rank, spec.words, max_cosets);
    std::cout << "index " << g.vertex_count << "\n";
    if (!out.empty()) emit(out, write_sgf(g));
}

void run_analyze(const std::string& spec_path, const std::string& out, int rmax,
                 long long budget) {
    std::string text = slurp(spec_path);
    SubgroupSpec spec = parse_subgroup_spec(text);
    std::unique_ptr<BallSource> source = source_from_spec(spec, budget);
    RatioSequence sphere = boundary_ratios(*source, rmax);
    RatioSequence ball = ball_ratios(*source, rmax);
    CogrowthSeries cog = cogrowth_series(*source, rmax);
    Classification cls = classify_conservativity(*source, rmax);

    json report = report_header("analyze", input_digest(text), budget);
    report["rmax"] = rmax;
    report["sphere_ratios"] = ratio_section(sphere);
    report["ball_ratios"] = ratio_section(ball);
    report["delta_estimate"] = delta_section(cls.delta);
    report["cogrowth"] = cogrowth_section(cog);
    report["classification"] = cls.label;
    emit(out, report_text(report));
}

void run_stats(const std::string& path, const std::string& out, int rmax, long long budget) {
    std::string text = slurp(path);
    SchreierGraph g = require_complete(parse_sgf(text), path);
    LocalStatistics stats = local_statistics(g, rmax);
    json report = report_header("stats", input_digest(text), budget);
    report["census"] = census_section(stats);
    emit(out, report_text(report));
}

int run_bsdist(const std::string& path_a, const std::string& path_b, const std::string& out,
               int rmax, const std::string& eps_text, long long budget) {
    std::string text_a = slurp(path_a);
    std::string text_b = slurp(path_b);
    SchreierGraph a = require_complete(parse_sgf(text_a), path_a);
    SchreierGraph b = require_complete(parse_sgf(text_b), path_b);
    LocalStatistics stats_a = local_statistics(a, rmax);
    LocalStatistics stats_b = local_statistics(b, rmax);
    Rat tv = tv_distance(stats_a, stats_b);
    std::cout << rat_str(tv) << "\n";

    json report = report_header("bsdist", input_digest(text_a), budget);
    report["reference_digest"] = input_digest(text_b);
    report["radius"] = rmax;
    report["tv_distance"] = rat_str(tv);

    int rc = 0;
    if (!eps_text.empty()) {
        Rat eps = parse_rat_or_decimal(eps_text);
        ApproximationCheck check = check_approximation(a, stats_b, eps);
        report["check"] = {{"epsilon", rat_str(eps)},
                           {"pass", check.pass},
                           {"worst_key", key_hex(check.worst_key)},
                           {"worst_gap", rat_str(check.worst_gap)}};
        if (!check.pass) {
            std::cout << "approximation check failed: worst key " << key_hex(check.worst_key)
                      << " gap " << rat_str(check.worst_gap) << "\n";
            rc = 1;
        }
    }
    if (!out.empty()) emit(out, report_text(report));
    return rc;
}

void run_stitch(const std::string& path, const std::string& out,
                const std::string& report_path, long long budget) {
    std::string text = slurp(path);
    SgfData data = parse_sgf(text);
    auto [graph, rep] = stitch(data.partial);
    emit(out, write_sgf(graph));
    if (!report_path.empty()) {
        json report = report_header("stitch", input_digest(text), budget);
        report["stitch"] = stitch_section(rep);
        emit(report_path, report_text(report));
    }
}

void run_cogrowth(const std::string& spec_path, const std::string& out, const std::string& csv,
                  int rmax, long long budget) {
    std::string text = slurp(spec_path);
    SubgroupSpec spec = parse_subgroup_spec(text);
    std::unique_ptr<BallSource> source = source_from_spec(spec, budget);
    CogrowthSeries series = cogrowth_series(*source, rmax);

    json report = report_header("cogrowth", input_digest(text), budget);
    report["rmax"] = rmax;
    report["cogrowth"] = cogrowth_section(series);
    emit(out, report_text(report));
    if (!csv.empty()) {
        std::ostringstream lines;
        lines << "r,count,cumulative,root_estimate_float\n";
        for (std::size_t r = 0; r < series.counts.size(); ++r)
            lines << r << "," << int_str(series.counts[r]) << ","
                  << int_str(series.cumulative[r]) << "," << series.root_estimates[r] << "\n";
        emit(csv, lines.str());
    }
}

void run_bound(int n, int k, const std::string& eps_text, int r, int m_max,
               const std::string& out, const std::string& csv) {
    GrowthBoundParams params;
    params.n = n;
    params.k = k;
    params.epsilon = parse_rat_or_decimal(eps_text);
    params.r = r;
    params.m_max = m_max;
    GrowthBound bound = growth_bound(params);

    char line[160];
    std::snprintf(line, sizeof line, "t_plus=%.6f t_minus=%.6f dominant_decay=%.6f\n",
                  bound.t_plus, bound.t_minus, bound.dominant_decay);
    std::cout << line;

    std::string param_text = "bound n=" + std::to_string(n) + " k=" + std::to_string(k) +
                             " eps=" + rat_str(params.epsilon) + " r=" + std::to_string(r) +
                             " m=" + std::to_string(m_max);
    if (!out.empty()) {
        json report = report_header("bound", input_digest(param_text), kDefaultVertexBudget);
        report["bound"] = bound_section(params, bound);
        emit(out, report_text(report));
    }
    if (!csv.empty()) {
        std::ostringstream lines;
        lines << "m,bound,normalized\n";
        for (std::size_t m = 0; m < bound.bounds.size(); ++m) {
            Rat normalized =
                bound.bounds[m] /
                Rat(sphere_size(n, r + static_cast<int>(m) * params.ell()));
            lines << m << "," << rat_str(bound.bounds[m]) << "," << rat_str(normalized) << "\n";
        }
        emit(csv, lines.str());
    }
}

void run_walk(const std::string& spec_path, const std::string& out, long long steps,
              long long trials, std::uint64_t seed, long long budget) {
    std::string text = slurp(spec_path);
    SubgroupSpec spec = parse_subgroup_spec(text);
    std::unique_ptr<BallSource> source = source_from_spec(spec, budget);
    WalkStats stats = srw_return_stats(*source, steps, trials, seed);

    char line[120];
    std::snprintf(line, sizeof line, "%s returns=%lld/%lld frequency=%.4f\n",
                  stats.label.c_str(), stats.returns, stats.trials, stats.frequency);
    std::cout << line;
    if (!out.empty()) {
        json report = report_header("walk", input_digest(text), budget);
        report["walk"] = walk_section(stats);
        emit(out, report_text(report));
    }
}

void run_density(const std::string& path, const std::string& out, const std::string& field_out,
                 const std::string& pred_name, int rmax, long long budget) {
    std::string text = slurp(path);
    SgfData data = parse_sgf(text);
    SchreierGraph g = require_complete(data, path);

    BinaryField field;
    std::string source_name;
    if (!pred_name.empty()) {
        field = field_from_predicate(g, make_predicate(pred_name));
        source_name = pred_name;
    } else if (data.field_bits) {
        field = BinaryField{g, *data.field_bits};
        source_name = "file";
    } else {
        throw ParseError("no field: pass --pred or include a field line in the SGF");
    }

    std::vector<Rat> profile = density_profile(field, rmax);
    json values = json::array();
    for (const Rat& v : profile) values.push_back(rat_str(v));
    json report = report_header("density", input_digest(text), budget);
    report["predicate"] = source_name;
    report["measure"] = rat_str(profile[0]);
    report["profile"] = values;
    emit(out, report_text(report));
    if (!field_out.empty()) emit(field_out, write_sgf(g, &field.bits));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schreier-graph analyzer for subgroups of free groups"};
    app.require_subcommand(1);
    int rc = 0;

    std::string in_path, in_path_b, out_path, csv_path, report_path, field_out;
    std::string pred_name, eps_text = "";
    int rmax = 12;
    long long budget_flag = 0, max_cosets = 1'000'000;
    long long steps = 100'000, trials = 200;
    std::uint64_t seed = 7;

    auto* validate_cmd = app.add_subcommand("validate", "Check an SGF file's graph structure");
    validate_cmd->add_option("sgf", in_path, "SGF file")->required();
    validate_cmd->callback([&]() { rc = run_validate(in_path); });

    auto* sample_cmd = app.add_subcommand("sample", "Materialize a subgroup spec as SGF");
    sample_cmd->add_option("spec", in_path, "subgroup spec JSON")->required();
    sample_cmd->add_option("-o,--out", out_path, "output SGF path (default stdout)");
    auto* sample_seed = sample_cmd->add_option("--seed", seed, "override the spec's seed fields");
    sample_cmd->add_option("--budget-vertices", budget_flag, "vertex cap");
    sample_cmd->add_option("--max-cosets", max_cosets, "coset cap for generator specs");
    sample_cmd->callback([&, sample_seed]() {
        run_sample(in_path, out_path,
                   sample_seed->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                   resolve_vertex_budget(budget_flag), max_cosets);
    });

    auto* cosets_cmd = app.add_subcommand("cosets", "Enumerate cosets of a generator spec");
    cosets_cmd->add_option("spec", in_path, "subgroup spec JSON")->required();
    cosets_cmd->add_option("-o,--out", out_path, "write the coset graph as SGF");
    cosets_cmd->add_option("--max-cosets", max_cosets, "coset cap");
    cosets_cmd->callback([&]() { run_cosets(in_path, out_path, max_cosets); });

    auto* analyze_cmd = app.add_subcommand("analyze", "Boundary-action report for a subgroup");
    analyze_cmd->add_option("spec", in_path, "subgroup spec JSON")->required();
    analyze_cmd->add_option("-r,--rmax", rmax, "maximum radius");
    analyze_cmd->add_option("-o,--out", out_path, "report path (default stdout)");
    analyze_cmd->add_option("--budget-vertices", budget_flag, "vertex cap");
    analyze_cmd->callback(
        [&]() { run_analyze(in_path, out_path, rmax, resolve_vertex_budget(budget_flag)); });

    auto* stats_cmd = app.add_subcommand("stats", "Neighborhood census of an SGF graph");
    stats_cmd->add_option("sgf", in_path, "SGF file")->required();
    stats_cmd->add_option("-r,--rmax", rmax, "census radius")->required();
    stats_cmd->add_option("-o,--out", out_path, "report path (default stdout)");
    stats_cmd->callback(
        [&]() { run_stats(in_path, out_path, rmax, resolve_vertex_budget(budget_flag)); });

    auto* bsdist_cmd =
        app.add_subcommand("bsdist", "Total-variation distance between two graphs' censuses");
    bsdist_cmd->add_option("a", in_path, "candidate SGF")->required();
    bsdist_cmd->add_option("b", in_path_b, "reference SGF")->required();
    bsdist_cmd->add_option("-r,--rmax", rmax, "census radius")->required();
    bsdist_cmd->add_option("--eps", eps_text, "also check |gap| < eps on every key");
    bsdist_cmd->add_option("-o,--out", out_path, "report path");
    bsdist_cmd->callback([&]() {
        rc = run_bsdist(in_path, in_path_b, out_path, rmax, eps_text,
                        resolve_vertex_budget(budget_flag));
    });

    auto* stitch_cmd = app.add_subcommand("stitch", "Repair a partial graph into a Schreier graph");
    stitch_cmd->add_option("sgf", in_path, "input SGF (may be partial)")->required();
    stitch_cmd->add_option("-o,--out", out_path, "output SGF path (default stdout)");
    stitch_cmd->add_option("--report", report_path, "stitch report JSON path");
    stitch_cmd->callback([&]() {
        run_stitch(in_path, out_path, report_path, resolve_vertex_budget(budget_flag));
    });

    auto* cogrowth_cmd = app.add_subcommand("cogrowth", "Closed reduced-path counts at the root");
    cogrowth_cmd->add_option("spec", in_path, "subgroup spec JSON")->required();
    cogrowth_cmd->add_option("-r,--rmax", rmax, "maximum word length");
    cogrowth_cmd->add_option("-o,--out", out_path, "report path (default stdout)");
    cogrowth_cmd->add_option("--csv", csv_path, "CSV output path");
    cogrowth_cmd->add_option("--budget-vertices", budget_flag, "vertex cap");
    cogrowth_cmd->callback([&]() {
        run_cogrowth(in_path, out_path, csv_path, rmax, resolve_vertex_budget(budget_flag));
    });

    int bound_n = 2, bound_k = 2, bound_r = 1, bound_m = 20;
    std::string bound_eps = "1";
    auto* bound_cmd = app.add_subcommand("bound", "Sphere-growth recurrence bounds");
    bound_cmd->add_option("--n", bound_n, "free group rank");
    bound_cmd->add_option("--k", bound_k, "cycle length (>= 2)");
    bound_cmd->add_option("--eps", bound_eps, "cycle density in (0,1]");
    bound_cmd->add_option("--r", bound_r, "initial radius");
    bound_cmd->add_option("--m", bound_m, "recurrence steps");
    bound_cmd->add_option("-o,--out", out_path, "report path");
    bound_cmd->add_option("--csv", csv_path, "CSV output path");
    bound_cmd->callback(
        [&]() { run_bound(bound_n, bound_k, bound_eps, bound_r, bound_m, out_path, csv_path); });

    auto* walk_cmd = app.add_subcommand("walk", "Random-walk return heuristic");
    walk_cmd->add_option("spec", in_path, "subgroup spec JSON")->required();
    walk_cmd->add_option("--steps", steps, "steps per trial");
    walk_cmd->add_option("--trials", trials, "number of trials");
    walk_cmd->add_option("--seed", seed, "base seed");
    walk_cmd->add_option("-o,--out", out_path, "report path");
    walk_cmd->add_option("--budget-vertices", budget_flag, "vertex cap");
    walk_cmd->callback([&]() {
        run_walk(in_path, out_path, steps, trials, seed, resolve_vertex_budget(budget_flag));
    });

    auto* density_cmd = app.add_subcommand("density", "Ball-density profile of a binary field");
    density_cmd->add_option("sgf", in_path, "SGF file")->required();
    density_cmd->add_option("--pred", pred_name,
                            "predicate: true | a-loop | k-cycle:<k> | key:<hex>");
    density_cmd->add_option("-r,--rmax", rmax, "maximum radius");
    density_cmd->add_option("-o,--out", out_path, "report path (default stdout)");
    density_cmd->add_option("--field-out", field_out, "write the graph plus field bits as SGF");
    density_cmd->callback([&]() {
        run_density(in_path, out_path, field_out, pred_name, rmax,
                    resolve_vertex_budget(budget_flag));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const AnalysisError& e) {
        std::cerr << "analysis failed: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
