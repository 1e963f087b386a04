#include "slowfast_cli/tables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "slowfast/error.hpp"

namespace slowfast::cli {

namespace {

TableRowSpec lienard_row(int row, int iters, double y0, int j, double a, double reference) {
    TableRowSpec s;
    s.table = 1;
    s.row = row;
    s.model.family = "lienard";
    s.model.j = j;
    s.model.a = a;
    s.config.h0 = y0;
    s.config.max_iterations = iters;
    s.start_display = y0;
    s.theoretical = theoretical_dimension(s.model);
    s.reference_value = reference;
    return s;
}

TableRowSpec twostroke_row(int row, double y0_tilde, double alpha, double delta, double gamma,
                           double reference) {
    TableRowSpec s;
    s.table = 2;
    s.row = row;
    s.model.family = "twostroke";
    s.model.alpha = alpha;
    s.model.delta = delta;
    s.model.gamma = gamma;
    s.config.h0 = y0_tilde - delta;
    s.config.max_iterations = 1000;
    s.start_display = y0_tilde;
    s.theoretical = theoretical_dimension(s.model);
    s.reference_value = reference;
    return s;
}

TableRowSpec normalform_row(int row, int m, int n, int j, double alpha, double beta,
                            double reference) {
    TableRowSpec s;
    s.table = 3;
    s.row = row;
    s.model.family = "normalform";
    s.model.m = m;
    s.model.n = n;
    s.model.j = j;
    s.model.alpha = alpha;
    s.model.beta = beta;
    s.config.h0 = 0.1;
    s.config.max_iterations = 2000;
    s.start_display = 0.1;
    s.theoretical = theoretical_dimension(s.model);
    s.reference_value = reference;
    return s;
}

}  // namespace

std::vector<TableRowSpec> table_rows(int table) {
    switch (table) {
    case 1:
        return {lienard_row(1, 100, 0.001, 0, 1.0, 0.330445),
                lienard_row(2, 1000, 0.001, 0, 2.0, 0.321854),
                lienard_row(3, 100, 0.001, 1, 1.0, 0.600363),
                lienard_row(4, 100, 0.001, 2, 1.0, 0.714286),
                lienard_row(5, 100, 0.001, 3, 1.0, 0.777777),
                lienard_row(6, 100, 0.001, 4, 1.0, 0.818176),
                lienard_row(7, 100, 0.3, 49, 1.0, 0.980189)};
    case 2:
        return {twostroke_row(1, 1.1, 1.0, 1.0, 1.0, 0.335137),
                twostroke_row(2, 1.1, 1.0, 1.0, 10.0, 0.335137),
                twostroke_row(3, 1.1, 2.0, 1.0, 1.0, 0.324280),
                twostroke_row(4, 10.1, 5.0, 10.0, 1.0, 0.331570)};
    case 3:
        return {normalform_row(1, 1, 2, 0, 1.0, 1.0, 0.345550),
                normalform_row(2, 1, 2, 0, 1.0, -1.0, 0.345550),
                normalform_row(3, 1, 2, 10, 1.0, 1.0, 0.920386),
                normalform_row(4, 1, 4, 10, 1.0, 1.0, 0.858920),
                normalform_row(5, 1, 10, 10, 1.0, 1.0, 0.673676),
                normalform_row(6, 3, 4, 10, 1.0, 1.0, 0.858265),
                normalform_row(7, 9, 10, 5, 5.0, 1.0, 0.523656),
                normalform_row(8, 99, 100, 50, 1.0, 1.0, 0.502158)};
    default:
        throw Error(ErrorKind::InvalidArgument, "table id must be 1, 2 or 3");
    }
}

TableRowResult run_table_row(const TableRowSpec& spec) {
    TableRowResult res;
    res.spec = spec;
    try {
        const RunOutput out = execute_run(spec.model, spec.config);
        res.record = out.record;
        const DimensionEstimate& best = out.estimates.closest_to(spec.theoretical);
        res.best_method = best.method;
        res.best_value = best.final_value;
        res.spread = out.estimates.spread();
        const CodimensionReport c = codimension_from_dimension(contact_order(spec.model),
                                                               res.best_value);
        res.codimension = !c.resolved ? -1 : c.infinite ? 0 : c.codimension;
        res.ok = true;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

std::vector<TableRowResult> run_table(int table, unsigned threads) {
    const std::vector<TableRowSpec> specs = table_rows(table);
    std::vector<TableRowResult> results(specs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            results[i] = run_table_row(specs[i]);
        }
    };
    const unsigned n = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(specs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

unsigned threads_from_env() {
    if (const char* env = std::getenv("SLOWFAST_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

CsvTable table_csv(const std::vector<TableRowResult>& results) {
    CsvTable t;
    if (results.empty()) return t;
    const int table = results.front().spec.table;
    t.header = {"row", "iterations"};
    switch (table) {
    case 1: t.header.insert(t.header.end(), {"y0", "j", "a"}); break;
    case 2: t.header.insert(t.header.end(), {"y0_tilde", "alpha", "delta", "gamma", "beta"}); break;
    default: t.header.insert(t.header.end(), {"y0", "m", "n", "j", "alpha", "beta"}); break;
    }
    t.header.insert(t.header.end(),
                    {"theoretical", "reference", "cahen", "borel", "tailnucleus", "computed",
                     "method", "abs_gap", "codimension", "spread", "max_rel_residual", "error"});

    for (const TableRowResult& r : results) {
        const ModelSpec& m = r.spec.model;
        std::vector<std::string> row = {std::to_string(r.spec.row),
                                        std::to_string(r.spec.config.max_iterations),
                                        format_number(r.spec.start_display)};
        switch (table) {
        case 1: row.insert(row.end(), {std::to_string(m.j), format_number(m.a)}); break;
        case 2:
            row.insert(row.end(), {format_number(m.alpha), format_number(m.delta),
                                   format_number(m.gamma),
                                   format_number(m.alpha * m.gamma * m.delta)});
            break;
        default:
            row.insert(row.end(), {std::to_string(m.m), std::to_string(m.n), std::to_string(m.j),
                                   format_number(m.alpha), format_number(m.beta)});
            break;
        }
        row.push_back(format_number(r.spec.theoretical));
        row.push_back(format_number(r.spec.reference_value));
        if (r.ok) {
            row.insert(row.end(),
                       {format_number(r.record.cahen), format_number(r.record.borel),
                        format_number(r.record.tailnucleus), format_number(r.best_value),
                        std::string(to_string(r.best_method)),
                        format_number(std::abs(r.best_value - r.spec.theoretical)),
                        r.codimension < 0    ? std::string("unresolved")
                        : r.codimension == 0 ? std::string("inf")
                                             : std::to_string(r.codimension),
                        format_number(r.spread), format_number(r.record.max_rel_residual), ""});
        } else {
            for (int i = 0; i < 9; ++i) row.emplace_back();
            row.push_back(r.error);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace slowfast::cli
