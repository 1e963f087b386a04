#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "slowfast/error.hpp"
#include "slowfast/models.hpp"

using namespace slowfast;
using oracle::LD;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected a slowfast::Error");
    return ErrorKind::InvalidArgument;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

// --- limit maps ---------------------------------------------------------------

TEST_CASE("normal form limits are plus and minus the n-th root") {
    const NormalFormModel m(2, 1, 0, 1.0, 1.0);
    CHECK(m.omega_limit(0.04) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(m.alpha_limit(0.04) == doctest::Approx(-0.2).epsilon(1e-15));
    const NormalFormModel m4(4, 3, 1, 1.0, 1.0);
    CHECK(m4.omega_limit(0.0016) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("lienard limits match a bisection oracle") {
    for (int j : {0, 1, 3}) {
        for (double a : {1.0, -2.0}) {
            const ClassicalLienardModel m(j, a);
            const oracle::Lienard ref{j, a};
            for (double h : {1e-6, 1e-3, 0.01}) {
                if (!m.admissible(h)) continue;
                CHECK(rel(m.omega_limit(h), static_cast<double>(ref.root(h, +1))) < 1e-13);
                CHECK(rel(m.alpha_limit(h), static_cast<double>(ref.root(h, -1))) < 1e-13);
            }
        }
    }
    // dense grid scan for the j = 0 example at h = 0.01
    const ClassicalLienardModel m(0, 1.0);
    const auto G = [](LD x) { return x * x + x * x * x - 0.01L; };
    CHECK(rel(m.omega_limit(0.01), static_cast<double>(oracle::grid_root(G, 0.0L, 0.2L))) < 1e-13);
    CHECK(rel(-m.alpha_limit(0.01),
              static_cast<double>(oracle::grid_root([&](LD x) { return G(-x); }, 0.0L, 0.2L))) <
          1e-13);
}

TEST_CASE("two-stroke limits match an RK4 oracle") {
    const TwoStrokeModel m(1.0, 1.0, 1.0);
    for (double h : {0.01, 0.1}) {
        const double w = oracle::two_stroke_crossing(1.0, 1.0, h, false);
        const double a = oracle::two_stroke_crossing(1.0, 1.0, h, true);
        CHECK(m.omega_limit(h) == doctest::Approx(w).epsilon(1e-9));
        CHECK(m.alpha_limit(h) == doctest::Approx(a).epsilon(1e-9));
        CHECK(m.omega_limit(h) < 1.0);
        CHECK(m.alpha_limit(h) > 1.0);
    }
    // a node: alpha-limits exist only below 10 l^2 ~ 0.436
    const TwoStrokeModel m2(5.0, 10.0, 1.0);
    CHECK(m2.max_height_is_open());
    CHECK(m2.max_height() == doctest::Approx(0.4356).epsilon(1e-3));
    const double h = 0.4;
    CHECK(m2.omega_limit(h) ==
          doctest::Approx(oracle::two_stroke_crossing(5.0, 10.0, h, false)).epsilon(1e-10));
    CHECK(m2.alpha_limit(h) ==
          doctest::Approx(oracle::two_stroke_crossing(5.0, 10.0, h, true)).epsilon(1e-10));
}

TEST_CASE("admissible ranges") {
    const NormalFormModel nf(2, 1, 0, 1.0, 1.0);
    CHECK(nf.max_height() == 0.25);  // pole of 1/(1 - x^2) kept at distance
    CHECK(nf.admissible(0.25));
    CHECK_FALSE(nf.admissible(0.0));
    CHECK_FALSE(nf.admissible(-1e-3));
    CHECK_FALSE(nf.admissible(0.3));
    CHECK(kind_of([&] { (void)nf.omega_limit(0.3); }) == ErrorKind::NonAdmissibleHeight);
    CHECK(kind_of([&] { (void)sdi(nf, 0.0, 0.1); }) == ErrorKind::NonAdmissibleHeight);

    const ClassicalLienardModel li(0, 1.0);
    CHECK(li.fold_x() == doctest::Approx(-2.0 / 3.0));
    CHECK(li.max_height() == doctest::Approx(4.0 / 27.0));
    CHECK_FALSE(li.admissible(li.max_height()));

    const TwoStrokeModel ts(1.0, 2.0, 1.0);
    CHECK(ts.max_height() == doctest::Approx(0.4));
    CHECK_FALSE(ts.max_height_is_open());
    CHECK(ts.admissible(0.4));
    CHECK(kind_of([&] { (void)ts.alpha_limit(0.41); }) == ErrorKind::NonAdmissibleHeight);
}

TEST_CASE("constructors validate their parameters") {
    CHECK(kind_of([] { NormalFormModel(3, 1, 0, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { NormalFormModel(2, 2, 0, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { NormalFormModel(2, 3, 0, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { NormalFormModel(2, 1, -1, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { NormalFormModel(2, 1, 0, 0.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { NormalFormModel(2, 1, 0, 1.0, 0.5); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ClassicalLienardModel(-1, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ClassicalLienardModel(0, 0.0); }) == ErrorKind::DegenerateModel);
    CHECK(kind_of([] { TwoStrokeModel(0.0, 1.0, 1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { TwoStrokeModel(1.0, -1.0, 1.0); }) == ErrorKind::InvalidArgument);
}

// --- slow divergence integral ---------------------------------------------------------

TEST_CASE("normal form sdi against its closed form") {
    const NormalFormModel m(2, 1, 0, -1.0, -1.0);
    const double I = sdi(m, 0.01, 0.01);
    CHECK(I == doctest::Approx(-8.0 * (std::atanh(0.1) - 0.1)).epsilon(1e-12));
    CHECK(I == doctest::Approx(-2.6828e-3).epsilon(1e-4));
    CHECK(rel(I, static_cast<double>(oracle::normal_form_n2_sdi(-1, -1, 0.01L, 0.01L))) < 1e-12);
}

TEST_CASE("lienard sdi against the polynomial antiderivative") {
    for (int j : {0, 1, 2}) {
        const ClassicalLienardModel m(j, 1.0);
        const oracle::Lienard ref{j, 1.0};
        for (double h : {1e-3, 0.01, 0.05}) {
            CHECK(rel(sdi(m, h, h), static_cast<double>(ref.sdi(h, h))) < 1e-10);
            CHECK(rel(sdi(m, 0.5 * h, h), static_cast<double>(ref.sdi(0.5L * h, h))) < 1e-10);
            CHECK(rel(sdi(m, h, 0.7 * h), static_cast<double>(ref.sdi(h, 0.7L * h))) < 1e-10);
        }
    }
}

TEST_CASE("two-stroke sdi against the closed form on RK4 limits") {
    const TwoStrokeModel m(2.0, 1.0, 3.0);
    const double he = 0.05, hx = 0.08;
    const double a = oracle::two_stroke_crossing(2.0, 1.0, he, true) - 2.0;
    const double w = oracle::two_stroke_crossing(2.0, 1.0, hx, false) - 2.0;
    const double expected = (w * w - a * a) / (2.0 * 3.0 * 1.0);
    CHECK(sdi(m, he, hx) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("degenerate lienard hook has a vanishing symmetric integral") {
    const auto m = ClassicalLienardModel::unchecked_for_testing(0, 0.0);
    for (double h : {1e-4, 1e-3, 0.1}) CHECK(sdi(m, h, h) == 0.0);
    CHECK(kind_of([&] { (void)orientation(m, 1e-3); }) == ErrorKind::DegenerateModel);
}

TEST_CASE("orientation examples") {
    CHECK(orientation(NormalFormModel(2, 1, 0, 1.0, 1.0), 1e-3) == Orientation::EntrySolved);
    CHECK(orientation(NormalFormModel(2, 1, 0, 1.0, -1.0), 1e-3) == Orientation::ExitSolved);
    CHECK(sdi(NormalFormModel(2, 1, 0, 1.0, 1.0), 1e-3, 1e-3) > 0.0);
    CHECK(sdi(NormalFormModel(2, 1, 0, 1.0, -1.0), 1e-3, 1e-3) > 0.0);
    // Lienard with a > 0: I > 0 and attracting-to-repelling slow flow
    CHECK(orientation(ClassicalLienardModel(0, 1.0), 1e-3) == Orientation::ExitSolved);
    CHECK(orientation(ClassicalLienardModel(0, -1.0), 1e-3) == Orientation::EntrySolved);
}

TEST_CASE("pair residual is the sdi of the pair") {
    const ClassicalLienardModel m(1, 1.0);
    const double h = 0.01, d = 0.002;
    CHECK(pair_residual(m, Orientation::EntrySolved, h, d) ==
          doctest::Approx(sdi(m, h - d, h)).epsilon(1e-12));
    CHECK(pair_residual(m, Orientation::ExitSolved, h, d) ==
          doctest::Approx(sdi(m, h, h - d)).epsilon(1e-12));
}

// --- properties -------------------------------------------------------------------------

TEST_CASE("property: normal form sdi has the sign of alpha") {
    oracle::Gen gen(20240601);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 * gen.integer(1, 5);
        const int m = 2 * gen.integer(0, n - 2) + 1;
        const int j = gen.integer(0, 5);
        const double alpha = (gen.coin() ? 1.0 : -1.0) * gen.log_uniform(0.1, 5.0);
        const double beta = gen.coin() ? 1.0 : -1.0;
        const NormalFormModel model(n, m, j, alpha, beta);
        const double h = gen.log_uniform(1e-8, 1.0) * model.max_height();
        INFO(model.describe() << " h = " << h);
        const double I = sdi(model, h, h);
        CHECK((I > 0.0) == (alpha > 0.0));
        CHECK(I != 0.0);
    }
}

TEST_CASE("property: normal form quadrature matches the closed form") {
    oracle::Gen gen(99);
    for (int trial = 0; trial < 100; ++trial) {
        const double alpha = (gen.coin() ? 1.0 : -1.0) * gen.log_uniform(0.1, 2.0);
        const double beta = gen.coin() ? 1.0 : -1.0;
        const NormalFormModel model(2, 1, 0, alpha, beta);
        const double he = gen.uniform(0.01, 1.0) * model.max_height();
        const double hx = gen.uniform(0.01, 1.0) * model.max_height();
        const double ref = static_cast<double>(oracle::normal_form_n2_sdi(alpha, beta, he, hx));
        INFO(model.describe() << " " << he << " " << hx);
        // the closed form cancels ~|ref| / sqrt(h); stay where it is reliable
        if (std::abs(ref) < 1e-6) continue;
        CHECK(rel(sdi(model, he, hx), ref) < 1e-10);
    }
}

TEST_CASE("property: limits are monotone in the height") {
    const NormalFormModel nf(4, 3, 2, 1.0, 1.0);
    const ClassicalLienardModel li(1, 1.0);
    const TwoStrokeModel ts(1.0, 1.0, 1.0);
    const SlowFastModel* models[] = {&nf, &li, &ts};
    for (const SlowFastModel* m : models) {
        INFO(m->describe());
        // distance from the contact point along each branch
        const double c = m->contact_x();
        double prev_w = 0.0, prev_a = 0.0;
        const double top = m->max_height() * (m->max_height_is_open() ? 0.999 : 1.0);
        for (int i = 1; i <= 1000; ++i) {
            const double h = top * i / 1000.0;
            const double w = std::abs(m->omega_limit(h) - c);
            const double a = std::abs(m->alpha_limit(h) - c);
            CHECK(w > prev_w);
            CHECK(a > prev_a);
            prev_w = w;
            prev_a = a;
        }
    }
}

TEST_CASE("property: lienard limits lie on the critical curve") {
    oracle::Gen gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int j = gen.integer(0, 6);
        const double a = (gen.coin() ? 1.0 : -1.0) * gen.log_uniform(0.2, 5.0);
        const ClassicalLienardModel m(j, a);
        const double h = gen.log_uniform(1e-10, 0.999) * m.max_height();
        INFO(m.describe() << " h = " << h);
        CHECK(std::abs(m.F(m.omega_limit(h)) - h) <= 4e-14 * h);
        CHECK(std::abs(m.F(m.alpha_limit(h)) - h) <= 4e-14 * h);
    }
}

TEST_CASE("property: two-stroke limits collapse onto the contact point") {
    const TwoStrokeModel m(2.0, 1.5, 1.0);
    const double c = m.contact_x();
    double prev_w = INFINITY, prev_a = INFINITY;
    for (double h : {1e-2, 1e-4, 1e-6}) {
        const double gw = std::abs(m.omega_limit(h) - c);
        const double ga = std::abs(m.alpha_limit(h) - c);
        CHECK(gw < prev_w);
        CHECK(ga < prev_a);
        prev_w = gw;
        prev_a = ga;
    }
    CHECK(prev_w < 1e-2);
    CHECK(prev_a < 1e-2);
}
