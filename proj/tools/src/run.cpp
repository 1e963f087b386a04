#include "slowfast_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "slowfast/error.hpp"

namespace slowfast::cli {

std::unique_ptr<SlowFastModel> make_model(const ModelSpec& spec) {
    if (spec.family == "lienard") return std::make_unique<ClassicalLienardModel>(spec.j, spec.a);
    if (spec.family == "normalform") {
        return std::make_unique<NormalFormModel>(spec.n, spec.m, spec.j, spec.alpha, spec.beta);
    }
    if (spec.family == "twostroke") {
        return std::make_unique<TwoStrokeModel>(spec.alpha, spec.delta, spec.gamma);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown model family '" + spec.family + "'");
}

int contact_order(const ModelSpec& spec) { return spec.family == "normalform" ? spec.n : 2; }

int expected_j(const ModelSpec& spec) { return spec.family == "twostroke" ? 0 : spec.j; }

double theoretical_dimension(const ModelSpec& spec) {
    return slowfast::theoretical_dimension(contact_order(spec), expected_j(spec));
}

Method parse_method(std::string_view s) {
    for (Method m : {Method::Cahen, Method::Borel, Method::TailNucleus, Method::BoxCount}) {
        if (to_string(m) == s) return m;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(s) + "'");
}

Orientation parse_orientation(std::string_view s) {
    for (Orientation o : {Orientation::EntrySolved, Orientation::ExitSolved}) {
        if (to_string(o) == s) return o;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown orientation '" + std::string(s) + "'");
}

RunOutput execute_run(const ModelSpec& spec, const SequenceConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto model = make_model(spec);

    RunOutput out;
    out.sequence = generate_sequence(*model, cfg);
    out.estimates = all_estimates(out.sequence);

    RunRecord& r = out.record;
    r.model = spec;
    r.config = cfg;
    r.heights = out.sequence.size();
    r.last_height = out.sequence.heights.back();
    r.orientation = out.sequence.orientation;
    r.truncated = out.sequence.truncated_early;
    r.stop_reason = out.sequence.stop_reason;
    r.cahen = out.estimates.cahen.final_value;
    r.borel = out.estimates.borel.final_value;
    r.tailnucleus = out.estimates.tail_nucleus.final_value;
    const DimensionEstimate& chosen = out.estimates.auto_selected();
    r.auto_method = chosen.method;
    r.auto_value = chosen.final_value;
    r.theoretical = theoretical_dimension(spec);

    const CodimensionReport codim = codimension_from_dimension(contact_order(spec), r.auto_value);
    r.codimension = !codim.resolved ? -1 : codim.infinite ? 0 : codim.codimension;
    r.snap_distance = codim.snap_distance;

    for (double res : out.sequence.residuals) {
        r.max_rel_residual = std::max(r.max_rel_residual, res / out.sequence.scale);
    }
    r.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

namespace {

const std::vector<std::string> kRunColumns = {
    "model",       "n",          "m",          "j",           "alpha",         "beta",
    "a",           "delta",      "gamma",      "y0",          "iterations",    "root_tol",
    "min_height",  "heights",    "last_height", "orientation", "truncated",    "stop_reason",
    "cahen",       "borel",      "tailnucleus", "auto_method", "auto_value",   "theoretical",
    "codimension", "snap_distance", "max_rel_residual", "wall_seconds"};

int parse_int(const std::string& s) {
    const double v = parse_number(s);
    if (v != std::floor(v)) throw Error(ErrorKind::InvalidArgument, "not an integer: " + s);
    return static_cast<int>(v);
}

}  // namespace

CsvTable run_records_csv(const std::vector<RunRecord>& records) {
    CsvTable t;
    t.header = kRunColumns;
    for (const RunRecord& r : records) {
        const ModelSpec& m = r.model;
        t.rows.push_back({m.family,
                          std::to_string(m.n),
                          std::to_string(m.m),
                          std::to_string(m.j),
                          format_number(m.alpha),
                          format_number(m.beta),
                          format_number(m.a),
                          format_number(m.delta),
                          format_number(m.gamma),
                          format_number(r.config.h0),
                          std::to_string(r.config.max_iterations),
                          format_number(r.config.root_tol),
                          format_number(r.config.min_height),
                          std::to_string(r.heights),
                          format_number(r.last_height),
                          std::string(to_string(r.orientation)),
                          r.truncated ? "1" : "0",
                          r.stop_reason,
                          format_number(r.cahen),
                          format_number(r.borel),
                          format_number(r.tailnucleus),
                          std::string(to_string(r.auto_method)),
                          format_number(r.auto_value),
                          format_number(r.theoretical),
                          std::to_string(r.codimension),
                          format_number(r.snap_distance),
                          format_number(r.max_rel_residual),
                          format_number(r.wall_seconds)});
    }
    return t;
}

std::vector<RunRecord> parse_run_records(const CsvTable& t) {
    std::vector<RunRecord> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto get = [&](std::string_view c) -> const std::string& { return t.at(i, c); };
        const auto num = [&](std::string_view c) { return parse_number(get(c)); };
        RunRecord r;
        r.model.family = get("model");
        r.model.n = parse_int(get("n"));
        r.model.m = parse_int(get("m"));
        r.model.j = parse_int(get("j"));
        r.model.alpha = num("alpha");
        r.model.beta = num("beta");
        r.model.a = num("a");
        r.model.delta = num("delta");
        r.model.gamma = num("gamma");
        r.config.h0 = num("y0");
        r.config.max_iterations = parse_int(get("iterations"));
        r.config.root_tol = num("root_tol");
        r.config.min_height = num("min_height");
        r.heights = static_cast<std::size_t>(parse_int(get("heights")));
        r.last_height = num("last_height");
        r.orientation = parse_orientation(get("orientation"));
        r.truncated = get("truncated") == "1";
        r.stop_reason = get("stop_reason");
        r.cahen = num("cahen");
        r.borel = num("borel");
        r.tailnucleus = num("tailnucleus");
        r.auto_method = parse_method(get("auto_method"));
        r.auto_value = num("auto_value");
        r.theoretical = num("theoretical");
        r.codimension = parse_int(get("codimension"));
        r.snap_distance = num("snap_distance");
        r.max_rel_residual = num("max_rel_residual");
        r.wall_seconds = num("wall_seconds");
        out.push_back(std::move(r));
    }
    return out;
}

CsvTable trace_csv(const RunOutput& out) {
    CsvTable t;
    t.header = {"k", "y_k", "est_cahen", "est_borel", "est_tailnucleus"};
    const std::size_t K = out.sequence.heights.size();
    std::vector<std::vector<std::string>> cells(K, std::vector<std::string>(3));
    const auto fill = [&](const DimensionEstimate& e, std::size_t col) {
        for (const KValue& kv : e.per_k) {
            if (kv.k >= 0 && static_cast<std::size_t>(kv.k) < K) {
                cells[static_cast<std::size_t>(kv.k)][col] = format_number(kv.value);
            }
        }
    };
    fill(out.estimates.cahen, 0);
    fill(out.estimates.borel, 1);
    fill(out.estimates.tail_nucleus, 2);
    for (std::size_t k = 0; k < K; ++k) {
        t.rows.push_back({std::to_string(k), format_number(out.sequence.heights[k]),
                          cells[k][0], cells[k][1], cells[k][2]});
    }
    return t;
}

}  // namespace slowfast::cli
