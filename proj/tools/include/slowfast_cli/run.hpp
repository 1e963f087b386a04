#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slowfast/dimension.hpp"
#include "slowfast/entryexit.hpp"
#include "slowfast/models.hpp"
#include "slowfast_cli/csv.hpp"

namespace slowfast::cli {

/// Model family plus every parameter any family may use; unused fields are
/// ignored by make_model but still serialized.
struct ModelSpec {
    std::string family = "normalform";  ///< lienard | normalform | twostroke
    int n = 2;
    int m = 1;
    int j = 0;
    double alpha = 1.0;
    double beta = 1.0;
    double a = 1.0;
    double delta = 1.0;
    double gamma = 1.0;
};

std::unique_ptr<SlowFastModel> make_model(const ModelSpec& spec);
int contact_order(const ModelSpec& spec);
/// Codimension parameter j predicted for the family (0 for the two-stroke
/// oscillator).
int expected_j(const ModelSpec& spec);
double theoretical_dimension(const ModelSpec& spec);

struct RunRecord {
    ModelSpec model;
    SequenceConfig config;
    std::size_t heights = 0;
    double last_height = 0.0;
    Orientation orientation = Orientation::EntrySolved;
    bool truncated = false;
    std::string stop_reason;
    double cahen = 0.0;
    double borel = 0.0;
    double tailnucleus = 0.0;
    Method auto_method = Method::Cahen;
    double auto_value = 0.0;
    double theoretical = 0.0;
    /// codimension snapped from auto_value; -1 when unresolved, 0 when infinite
    int codimension = -1;
    double snap_distance = 0.0;
    double max_rel_residual = 0.0;  ///< max |I| / |I(y0, y0)| over all pairs
    double wall_seconds = 0.0;
};

struct RunOutput {
    RunRecord record;
    FractalSequence sequence;
    FormulaEstimates estimates;
};

RunOutput execute_run(const ModelSpec& spec, const SequenceConfig& cfg);

CsvTable run_records_csv(const std::vector<RunRecord>& records);
/// Reads back what run_records_csv wrote.
std::vector<RunRecord> parse_run_records(const CsvTable& table);

/// Per-k trace: k, y_k, est_cahen, est_borel, est_tailnucleus (empty cell
/// where an estimator is undefined at that k).
CsvTable trace_csv(const RunOutput& out);

Method parse_method(std::string_view s);
Orientation parse_orientation(std::string_view s);

}  // namespace slowfast::cli
