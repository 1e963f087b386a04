#include "slowfast_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "slowfast/dimension.hpp"
#include "slowfast/series.hpp"
#include "slowfast_cli/csv.hpp"
#include "slowfast_cli/run.hpp"
#include "slowfast_cli/svg.hpp"
#include "slowfast_cli/tables.hpp"

namespace slowfast::cli {

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonAdmissibleHeight:
    case ErrorKind::DegenerateModel:
    case ErrorKind::WrongShape:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotInvertible:
    case ErrorKind::CompositionConstantTerm:
        return kExitModel;
    case ErrorKind::NoConvergence:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::BracketFailure:
    case ErrorKind::DegenerateGap:
    case ErrorKind::InsufficientScales:
        return kExitNumeric;
    }
    return kExitNumeric;
}

namespace {

struct ModelArgs {
    ModelSpec spec;
    double y0 = 0.0;
    int iters = 0;
    double root_tol = 1e-12;
    double min_height = 1e-14;
    CLI::Option* y0_opt = nullptr;
};

void add_model_options(CLI::App& cmd, ModelArgs& m, int default_iters) {
    m.iters = default_iters;
    cmd.add_option("--model", m.spec.family, "Model family")
        ->required()
        ->check(CLI::IsMember({"lienard", "normalform", "twostroke"}));
    cmd.add_option("--n", m.spec.n, "Contact order (normalform)")->capture_default_str();
    cmd.add_option("--m", m.spec.m, "Singularity order (normalform)")->capture_default_str();
    cmd.add_option("--j", m.spec.j, "Codimension parameter j")->capture_default_str();
    cmd.add_option("--a", m.spec.a, "Coefficient of x^(2j+3) in F (lienard)")
        ->capture_default_str();
    cmd.add_option("--alpha", m.spec.alpha, "alpha (normalform, twostroke)")->capture_default_str();
    cmd.add_option("--beta", m.spec.beta, "beta = +1 or -1 (normalform)")->capture_default_str();
    cmd.add_option("--delta", m.spec.delta, "delta (twostroke)")->capture_default_str();
    cmd.add_option("--gamma", m.spec.gamma, "gamma (twostroke)")->capture_default_str();
    m.y0_opt = cmd.add_option("--y0", m.y0,
                              "Starting section height (above the contact point; for twostroke "
                              "this is y~0 - delta)");
    cmd.add_option("--iters", m.iters, "Number of entry-exit steps")->capture_default_str();
    cmd.add_option("--root-tol", m.root_tol, "Relative tolerance on each gap")
        ->capture_default_str();
    cmd.add_option("--min-height", m.min_height, "Stop once heights fall below this")
        ->capture_default_str();
}

SequenceConfig sequence_config(const ModelArgs& m, double default_y0) {
    if (m.iters < 1) throw UsageError("--iters must be at least 1");
    SequenceConfig cfg;
    cfg.h0 = m.y0_opt->count() > 0 ? m.y0 : default_y0;
    cfg.max_iterations = m.iters;
    cfg.root_tol = m.root_tol;
    cfg.min_height = m.min_height;
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw UsageError("failed writing '" + path + "'");
}

std::string codim_text(int codim) {
    if (codim < 0) return "unresolved";
    if (codim == 0) return "infinite";
    return std::to_string(codim);
}

int cmd_run(const ModelArgs& m, const std::string& method, const std::string& trace,
            const std::string& csv, std::ostream& out, std::ostream& err) {
    const SequenceConfig cfg =
        sequence_config(m, m.spec.family == "lienard" ? 0.001 : 0.1);
    const RunOutput run = execute_run(m.spec, cfg);
    const RunRecord& r = run.record;

    const auto model = make_model(m.spec);
    out << "model          " << model->describe() << '\n';
    out << "orientation    " << to_string(r.orientation) << '\n';
    out << "heights        " << r.heights << " (y0 " << format_number(cfg.h0) << ", last "
        << format_number(r.last_height) << ")\n";
    if (r.truncated) out << "truncated      " << r.stop_reason << '\n';
    out << "cahen          " << format_number(r.cahen) << '\n';
    out << "borel          " << format_number(r.borel) << '\n';
    out << "tailnucleus    " << format_number(r.tailnucleus) << '\n';

    Method shown = r.auto_method;
    double value = r.auto_value;
    if (method != "best") {
        shown = parse_method(method);
        value = shown == Method::Cahen   ? r.cahen
                : shown == Method::Borel ? r.borel
                                         : r.tailnucleus;
    }
    out << "selected       " << to_string(shown) << ' ' << format_number(value) << '\n';
    out << "theoretical    " << format_number(r.theoretical) << '\n';

    const CodimensionReport c = codimension_from_dimension(contact_order(m.spec), value);
    out << "codimension    "
        << codim_text(!c.resolved ? -1 : c.infinite ? 0 : c.codimension);
    if (c.resolved && !c.infinite) out << " (j = " << c.recovered_j << ')';
    out << ", snap distance " << format_number(c.snap_distance) << '\n';
    out << "max residual   " << format_number(r.max_rel_residual) << " (relative to |I(y0,y0)|)\n";

    if (!trace.empty()) write_file(trace, to_csv(trace_csv(run)));
    if (!csv.empty()) write_file(csv, to_csv(run_records_csv({r})));
    err << "wall time " << format_number(r.wall_seconds) << " s\n";
    return kExitOk;
}

int cmd_table(int id, int threads, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned n = threads > 0 ? static_cast<unsigned>(threads) : threads_from_env();
    const std::vector<TableRowResult> results = run_table(id, n);
    const std::string csv = to_csv(table_csv(results));
    if (out_path.empty()) out << csv;
    else write_file(out_path, csv);
    int failures = 0;
    for (const auto& r : results) {
        if (!r.ok) {
            ++failures;
            err << "row " << r.spec.row << " failed: " << r.error << '\n';
        }
    }
    err << "table " << id << ": " << results.size() << " rows, " << failures << " failed, "
        << format_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                             .count())
        << " s\n";
    return kExitOk;
}

int cmd_chirp(const ModelArgs& m, const std::string& svg, std::ostream& out, std::ostream& err) {
    const auto model = make_model(m.spec);
    const double top = model->max_height();
    const SequenceConfig cfg = sequence_config(m, 0.9 * top);
    const FractalSequence seq = generate_sequence(*model, cfg);
    const std::vector<Segment> segments = chirp_segments(*model, seq);

    out << "model          " << model->describe() << '\n';
    out << "segments       " << segments.size() << " (y0 " << format_number(cfg.h0) << ", last "
        << format_number(seq.heights.back()) << ")\n";
    if (seq.truncated_early) out << "truncated      " << seq.stop_reason << '\n';
    const double theory = chirp_theoretical_dimension(contact_order(m.spec), expected_j(m.spec));
    if (!svg.empty()) {
        std::ostringstream title;
        title << "chirp of " << model->describe() << ", " << segments.size() << " segments";
        write_file(svg, chirp_svg(*model, segments, title.str()));
        out << "svg            " << svg << '\n';
    }
    const DimensionEstimate box = box_count_dimension(segments);
    out << "box-count      " << format_number(box.final_value) << " (scales 2^-" << box.k_first
        << " .. 2^-" << box.k_last << ")\n";
    out << "theoretical    " << format_number(theory) << '\n';
    err << "done\n";
    return kExitOk;
}

int cmd_codim_series(const std::vector<double>& h1_coeffs, int order, std::ostream& out) {
    if (h1_coeffs.empty()) throw UsageError("--h1 needs at least one coefficient");
    if (order < 2) throw UsageError("--order must be at least 2");
    if (static_cast<int>(h1_coeffs.size()) > order + 1) {
        throw UsageError("--h1 has more coefficients than --order allows");
    }
    const TruncatedSeries h1(h1_coeffs, order);
    const TruncatedSeries psi = psi_from_h1(h1);
    const TruncatedSeries inv = series_invert(psi);
    const TruncatedSeries g = g_from_h1(h1);

    out << "h1     = " << h1.to_string() << '\n';
    out << "Psi    = " << psi.to_string() << '\n';
    out << "Psi^-1 = " << inv.to_string() << '\n';
    out << "g      = " << g.to_string() << '\n';
    out << "i,psi,psi_inv,g\n";
    for (int i = 0; i <= order; ++i) {
        out << i << ',' << format_number(psi[i]) << ',' << format_number(inv[i]) << ','
            << (i <= g.order() ? format_number(g[i]) : std::string()) << '\n';
    }

    const SeriesCodimension v = codimension_from_series(g);
    if (!v.finite) {
        out << "verdict: infinite up to order " << v.checked_order << " of g~\n";
        return kExitOk;
    }
    out << "verdict: codimension " << v.codimension << " (j = " << v.j << ")\n";
    out << "alpha  = " << format_number(v.alpha) << " (" << (v.alpha > 0 ? "positive" : "negative")
        << ")\n";

    // the Lienard model x' = y - F(x) with F = x^2 - x^3 h1 has F's x^(2j+3)
    // coefficient equal to minus the x^(2j) coefficient of h1
    const double a = -h1[2 * v.j];
    if (a == 0.0) {
        out << "cross-check: n/a (h1 has no x^" << 2 * v.j << " term)\n";
        return kExitOk;
    }
    const ClassicalLienardModel paired(v.j, a);
    const double h = paired.admissible(1e-3) ? 1e-3 : 0.5 * paired.max_height();
    const double I = paired.symmetric_sdi(h);
    const bool agree = (I > 0.0) == (v.alpha > 0.0);
    out << "cross-check: " << paired.describe() << " I(h,h) at h = " << format_number(h) << " is "
        << format_number(I) << "; sign " << (agree ? "agrees" : "DISAGREES") << '\n';
    return kExitOk;
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractal sequences and codimension of nilpotent contact points", "slowfast"};
    app.require_subcommand(1);

    ModelArgs run_args;
    std::string method = "best", trace, csv;
    CLI::App* run = app.add_subcommand("run", "Generate a fractal sequence and estimate its dimension");
    add_model_options(*run, run_args, 100);
    run->add_option("--method", method, "Estimator reported as selected")
        ->check(CLI::IsMember({"best", "cahen", "borel", "tailnucleus"}))
        ->capture_default_str();
    run->add_option("--trace", trace, "Write the per-k trace CSV here");
    run->add_option("--csv", csv, "Write the run record CSV here");

    int table_id = 0, threads = 0;
    std::string table_out;
    CLI::App* table = app.add_subcommand("table", "Reproduce reference table 1, 2 or 3 as CSV");
    table->add_option("id", table_id, "Table number")->required()->check(CLI::IsMember({1, 2, 3}));
    table->add_option("--out", table_out, "Write the CSV here instead of stdout");
    table->add_option("--threads", threads, "Parallel rows (default: SLOWFAST_THREADS or cores)");

    ModelArgs chirp_args;
    std::string svg;
    CLI::App* chirp = app.add_subcommand("chirp", "Box-count the chirp and optionally plot it");
    add_model_options(*chirp, chirp_args, 10000);
    chirp->add_option("--svg", svg, "Write an 800x600 SVG plot here");

    std::vector<double> h1;
    int order = 16;
    CLI::App* codim = app.add_subcommand("codim-series",
                                         "Codimension of a Lienard slow-fast Hopf point from h1");
    codim->add_option("--h1", h1, "Coefficients h1_0,h1_1,... of h1(x)")
        ->required()
        ->delimiter(',');
    codim->add_option("--order", order, "Truncation order")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_args, method, trace, csv, out, err);
        if (*table) return cmd_table(table_id, threads, table_out, out, err);
        if (*chirp) return cmd_chirp(chirp_args, svg, out, err);
        if (*codim) return cmd_codim_series(h1, order, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    }
    return kExitUsage;
}

}  // namespace slowfast::cli
