#pragma once

#include <string>
#include <vector>

#include "slowfast_cli/csv.hpp"
#include "slowfast_cli/run.hpp"

namespace slowfast::cli {

/// One reference experiment: the model, how the sequence is started and how
/// long it runs, and the value reported for it in the literature.
struct TableRowSpec {
    int table = 1;
    int row = 1;
    ModelSpec model;
    SequenceConfig config;
    double start_display = 0.0;  ///< starting height as tabulated (y~0 for the two-stroke)
    double theoretical = 0.0;
    double reference_value = 0.0;
};

std::vector<TableRowSpec> table_rows(int table);

struct TableRowResult {
    TableRowSpec spec;
    bool ok = false;
    std::string error;
    RunRecord record;
    Method best_method = Method::Cahen;  ///< estimator closest to the theoretical value
    double best_value = 0.0;
    double spread = 0.0;  ///< largest pairwise gap between the three estimators
    /// codimension snapped from best_value; -1 unresolved, 0 infinite
    int codimension = -1;
};

TableRowResult run_table_row(const TableRowSpec& spec);

/// Runs all rows of a table, at most `threads` at a time; results keep row
/// order.
std::vector<TableRowResult> run_table(int table, unsigned threads);

/// SLOWFAST_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned threads_from_env();

/// Deterministic CSV: row parameters, theoretical value, the three
/// estimators, the best one and its gap, snapped codimension. No timings.
CsvTable table_csv(const std::vector<TableRowResult>& results);

}  // namespace slowfast::cli
