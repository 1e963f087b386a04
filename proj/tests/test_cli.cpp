#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "slowfast_cli/commands.hpp"
#include "slowfast_cli/csv.hpp"
#include "slowfast_cli/run.hpp"
#include "slowfast_cli/svg.hpp"
#include "slowfast_cli/tables.hpp"

using namespace slowfast;
using namespace slowfast::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_main(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "slowfast_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

// --- CSV --------------------------------------------------------------------------

TEST_CASE("number formatting") {
    CHECK(format_number(0.330444952) == "0.330444952");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(parse_number("0.25") == 0.25);
    CHECK(std::isinf(parse_number("inf")));
    CHECK_THROWS(parse_number("0.25x"));
    CHECK_THROWS(parse_number(""));
}

TEST_CASE("property: formatted numbers re-parse to a fixed point") {
    oracle::Gen gen(77);
    for (int trial = 0; trial < 2000; ++trial) {
        const double v = (gen.coin() ? 1.0 : -1.0) * gen.log_uniform(1e-300, 1e300);
        const std::string s = format_number(v);
        const double back = parse_number(s);
        CHECK(std::abs(back - v) <= 5e-9 * std::abs(v));
        CHECK(format_number(back) == s);
    }
}

TEST_CASE("csv quoting round trip") {
    CsvTable t;
    t.header = {"a", "b,c", "d"};
    t.rows = {{"1", "x \"quoted\"", ""}, {"line\nbreak", "2", "3"}};
    const CsvTable back = parse_csv(to_csv(t));
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK(back.at(0, "b,c") == "x \"quoted\"");
    CHECK_THROWS(parse_csv("a,b\n1,2,3\n"));
    CHECK_THROWS(t.column("missing"));
    // CRLF input
    const CsvTable crlf = parse_csv("x,y\r\n1,2\r\n");
    CHECK(crlf.rows.size() == 1);
    CHECK(crlf.at(0, "y") == "2");
}

// --- run ----------------------------------------------------------------------------

TEST_CASE("run reproduces the first lienard row") {
    const Result r = invoke({"run", "--model", "lienard", "--j", "0", "--a", "1", "--y0", "0.001",
                             "--iters", "100"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "cahen          0.330444"));
    CHECK(contains(r.out, "codimension    1"));
    CHECK(contains(r.err, "wall time"));
    CHECK_FALSE(contains(r.out, "wall time"));
}

TEST_CASE("run on the first normal form row") {
    const Result r = invoke({"run", "--model", "normalform", "--n", "2", "--m", "1", "--j", "0",
                             "--alpha", "1", "--beta", "1", "--y0", "0.1", "--iters", "2000"});
    CHECK(r.code == kExitOk);
    const auto pos = r.out.find("borel");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 5)) == doctest::Approx(0.345550).epsilon(2e-6));
}

TEST_CASE("exit codes") {
    const Result degenerate = invoke({"run", "--model", "lienard", "--j", "0", "--a", "0", "--y0",
                                      "0.001", "--iters", "100"});
    CHECK(degenerate.code == kExitModel);
    CHECK(contains(degenerate.err, "DegenerateModel"));

    CHECK(invoke({"chirp", "--model", "normalform", "--iters", "0"}).code == kExitUsage);
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"run", "--model", "spline"}).code == kExitUsage);
    CHECK(invoke({"run"}).code == kExitUsage);
    CHECK(invoke({"table", "4"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);

    const Result too_high = invoke({"run", "--model", "normalform", "--y0", "0.4"});
    CHECK(too_high.code == kExitModel);
    CHECK(contains(too_high.err, "NonAdmissibleHeight"));

    CHECK(exit_code_for(ErrorKind::BracketFailure) == kExitNumeric);
    CHECK(exit_code_for(ErrorKind::InsufficientScales) == kExitNumeric);
    CHECK(exit_code_for(ErrorKind::WrongShape) == kExitModel);
}

TEST_CASE("run record and trace csv round trip") {
    const fs::path csv = scratch("run.csv"), trace = scratch("trace.csv");
    const Result r = invoke({"run", "--model", "twostroke", "--alpha", "2", "--delta", "1",
                             "--gamma", "1", "--y0", "0.1", "--iters", "300", "--csv",
                             csv.string(), "--trace", trace.string()});
    REQUIRE(r.code == kExitOk);

    std::ifstream f(csv);
    const CsvTable table = read_csv(f);
    const std::vector<RunRecord> records = parse_run_records(table);
    REQUIRE(records.size() == 1);
    const RunRecord& rec = records[0];
    CHECK(rec.model.family == "twostroke");
    CHECK(rec.model.alpha == 2.0);
    CHECK(rec.config.max_iterations == 300);
    CHECK(rec.heights == 301);
    // writing the parsed record again gives the same bytes
    CHECK(to_csv(run_records_csv(records)) == slurp(csv));

    const CsvTable tr = parse_csv(slurp(trace));
    CHECK(tr.header == std::vector<std::string>{"k", "y_k", "est_cahen", "est_borel",
                                                "est_tailnucleus"});
    CHECK(tr.rows.size() == 301);
    CHECK(parse_number(tr.at(0, "y_k")) == 0.1);
    CHECK(tr.at(0, "est_cahen").empty());
    CHECK(format_number(parse_number(tr.rows.back()[2])) == format_number(rec.cahen));
}

TEST_CASE("execute_run fills the record") {
    ModelSpec spec;
    spec.family = "lienard";
    spec.j = 1;
    SequenceConfig cfg;
    cfg.h0 = 0.001;
    cfg.max_iterations = 100;
    const RunOutput out = execute_run(spec, cfg);
    CHECK(out.record.heights == 101);
    CHECK(out.record.theoretical == doctest::Approx(0.6));
    CHECK(out.record.auto_method == Method::TailNucleus);
    CHECK(out.record.auto_value == doctest::Approx(0.600363).epsilon(1e-5));
    CHECK(out.record.codimension == 2);
    CHECK(out.record.max_rel_residual <= cfg.root_tol);
}

// --- tables ----------------------------------------------------------------------------

TEST_CASE("table layouts") {
    CHECK(table_rows(1).size() == 7);
    CHECK(table_rows(2).size() == 4);
    CHECK(table_rows(3).size() == 8);
    CHECK_THROWS(table_rows(4));
    for (const TableRowSpec& s : table_rows(2)) {
        // tabulated starting height y~0 is stored relative to delta
        CHECK(s.config.h0 == doctest::Approx(s.start_display - s.model.delta));
        CHECK(s.config.max_iterations == 1000);
    }
}

TEST_CASE("table 1 through the command line is deterministic") {
    const fs::path a = scratch("t1a.csv"), b = scratch("t1b.csv");
    REQUIRE(invoke({"table", "1", "--out", a.string(), "--threads", "3"}).code == kExitOk);
    REQUIRE(invoke({"table", "1", "--out", b.string(), "--threads", "1"}).code == kExitOk);
    const std::string ca = slurp(a);
    CHECK(ca == slurp(b));
    const CsvTable t = parse_csv(ca);
    REQUIRE(t.rows.size() == 7);
    CHECK(to_csv(t) == ca);
    // row j = 3
    CHECK(t.at(4, "j") == "3");
    CHECK(std::abs(parse_number(t.at(4, "computed")) - 7.0 / 9.0) < 0.015);
    CHECK(t.at(4, "codimension") == "4");
    CHECK(t.at(4, "error").empty());
}

TEST_CASE("table 2 rows sit near one third") {
    const Result r = invoke({"table", "2"});
    REQUIRE(r.code == kExitOk);
    const CsvTable t = parse_csv(r.out);
    REQUIRE(t.rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(parse_number(t.at(i, "computed")) - 1.0 / 3.0) < 0.015);
    }
}

TEST_CASE("thread count from the environment") {
    ::setenv("SLOWFAST_THREADS", "3", 1);
    CHECK(threads_from_env() == 3u);
    ::setenv("SLOWFAST_THREADS", "zero", 1);
    CHECK(threads_from_env() >= 1u);
    ::unsetenv("SLOWFAST_THREADS");
    CHECK(threads_from_env() >= 1u);
}

// --- chirp and series ------------------------------------------------------------------

TEST_CASE("chirp writes an svg and a box count") {
    const fs::path svg = scratch("chirp.svg");
    const Result r = invoke({"chirp", "--model", "normalform", "--n", "2", "--j", "1", "--y0",
                             "0.45", "--iters", "10000", "--svg", svg.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "theoretical    1.4"));
    const auto pos = r.out.find("box-count");
    REQUIRE(pos != std::string::npos);
    const double box = std::stod(r.out.substr(pos + 9));
    CHECK(std::abs(box - 1.4) < 0.1);

    const std::string doc = slurp(svg);
    CHECK(contains(doc, "<svg"));
    CHECK(contains(doc, "width=\"800\""));
    CHECK(contains(doc, "height=\"600\""));
    CHECK(contains(doc, "</svg>"));
}

TEST_CASE("chirp of a codimension one normal form is one dimensional") {
    const Result r = invoke({"chirp", "--model", "normalform", "--n", "2", "--j", "0", "--y0",
                             "0.25", "--iters", "10000"});
    REQUIRE(r.code == kExitOk);
    const auto pos = r.out.find("box-count");
    const double box = std::stod(r.out.substr(pos + 9));
    CHECK(std::abs(box - 1.0) < 0.15);
}

TEST_CASE("codim-series verdicts") {
    const Result one = invoke({"codim-series", "--h1", "1"});
    CHECK(one.code == kExitOk);
    CHECK(contains(one.out, "verdict: codimension 1"));
    CHECK(contains(one.out, "(negative)"));
    CHECK(contains(one.out, "sign agrees"));
    CHECK(contains(one.out, "i,psi,psi_inv,g"));

    const Result odd = invoke({"codim-series", "--h1", "0,1"});
    CHECK(contains(odd.out, "infinite up to order"));

    const Result two = invoke({"codim-series", "--h1", "0,0,1"});
    CHECK(contains(two.out, "verdict: codimension 2"));
    CHECK(contains(two.out, "sign agrees"));

    CHECK(invoke({"codim-series", "--h1", "1", "--order", "1"}).code == kExitUsage);
}
