#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mobius/error.hpp"
#include "mobius/identity.hpp"

using namespace mobius;

namespace {

const ArithmeticTable& table() {
    static const auto t = ArithmeticTable::build(20000);
    return t;
}

const double kGrid[] = {1.0, 1.5, 2.0, std::numbers::e, 10.0, 100.0, 1000.0};

// Simpson on a fine grid as an independent check of the closed-form integrals.
cplx simpson_power_log(cplx p, int j, double t0, double t1) {
    const int n = 20000;
    const double h = (t1 - t0) / n;
    cplx sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = t0 + i * h;
        cplx v = std::exp(p * std::log(t));
        if (j) v *= std::log(t);
        sum += v * double(i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("power-log integrals") {
    const cplx ps[] = {0.0, -1.0, -2.0, 0.5, cplx(-0.5, 3.0), -1.0 + 1e-9, cplx(-1.0, 1e-7)};
    const std::pair<double, double> ranges[] = {{1.0, 2.0}, {1.0, 1.0 + 1e-6}, {3.0, 7.5}, {0.01, 1.0}};
    for (auto p : ps)
        for (auto [a, b] : ranges)
            for (int j = 0; j < 2; ++j) {
                const cplx exact = integral_power_log(p, j, a, b);
                const cplx ref = simpson_power_log(p, j, a, b);
                CHECK(std::abs(exact - ref) <= 1e-9 * (1.0 + std::abs(ref)));
            }
    CHECK(std::abs(integral_power_log(-1.0, 0, 1.0, 5.0) - std::log(5.0)) < 1e-15);
    CHECK(std::abs(integral_power_log(-1.0, 1, 1.0, 5.0) - 0.5 * std::log(5.0) * std::log(5.0)) < 1e-14);
    CHECK(std::abs(integral_power_log(0.0, 0, 2.0, 1.0) + 1.0) < 1e-15);
    CHECK_THROWS_AS(integral_power_log(0.0, 2, 1.0, 2.0), DomainError);
}

TEST_CASE("breakpoints") {
    auto b = ofd_breakpoints(10.0);
    CHECK(b.front() == 1.0);
    CHECK(b.back() == 10.0);
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(std::adjacent_find(b.begin(), b.end()) == b.end());
    // 1..10 together with 10/m for m <= 10 (10/3, 10/4, 10/6, 10/7, 10/8, 10/9 are new)
    CHECK(b.size() == 16);
    CHECK(ofd_breakpoints(1.0).size() == 1);
}

TEST_CASE("closed-form catalog examples") {
    auto meissel = catalog_check(table(), CatalogName::meissel, 2.5);
    REQUIRE(meissel.size() == 1);
    CHECK(std::abs(meissel[0].lhs - 0.25) < 1e-12);
    CHECK(meissel[0].residual <= 1e-12);

    auto elm = catalog_check(table(), CatalogName::elmarraki, 2.0);
    CHECK(std::abs(elm[0].lhs - std::numbers::ln2) < 1e-14);
    CHECK(elm[0].residual <= 1e-12);

    auto mac = catalog_check(table(), CatalogName::macleod, 2.0);
    CHECK(std::abs(mac[0].lhs) < 1e-15);
    CHECK(std::abs(mac[0].rhs) < 1e-14);

    auto eg = catalog_check(table(), CatalogName::euler_gamma, 1.0);
    REQUIRE(eg.size() == 2);
    CHECK(std::abs(eg[1].lhs) < 1e-15);
    CHECK(eg[1].residual < 1e-15);
    // At X = 2 the printed integrand (1/t in place of 1) misses by (1 - log 2)/2.
    auto eg2 = catalog_check(table(), CatalogName::euler_gamma, 2.0);
    CHECK(std::abs(eg2[0].residual - (1.0 - std::numbers::ln2) / 2.0) < 1e-14);
    CHECK(eg2[1].residual < 1e-14);
}

TEST_CASE("liouville readings") {
    auto rows = catalog_check(table(), CatalogName::liouville, 1.0);
    REQUIRE(rows.size() == 3);
    CHECK(std::abs(rows[0].residual - 1.0) < 1e-14);
    CHECK(rows[1].residual < 1e-14);
    CHECK(rows[2].residual < 1e-14);
    for (double X : kGrid) {
        auto r = catalog_check(table(), CatalogName::liouville, X);
        CHECK(r[1].residual <= 1e-10);
        CHECK(r[0].ofd_residual <= 1e-9);
    }
    // The printed form is off by 1 - 2/sqrt(X) + (1/X) integral floor(sqrt(X/t)) dt/t, nonzero at X = 10.
    CHECK(catalog_check(table(), CatalogName::liouville, 10.0)[0].residual > 1e-3);
}

TEST_CASE("catalog rows hold on the grid") {
    for (auto name : {CatalogName::meissel, CatalogName::elmarraki, CatalogName::macleod, CatalogName::euler_gamma}) {
        for (double X : kGrid) {
            auto rows = catalog_check(table(), name, X);
            const auto& row = rows.back();
            INFO(row.name << " X=" << X);
            CHECK(row.residual <= 1e-9);
            CHECK(rows[0].ofd_residual <= 1e-9);
        }
    }
}

TEST_CASE("general kernel corollary: sign-corrected reading") {
    const Kernel kernels[] = {Kernel::dirac_at_1(), Kernel::one(), Kernel::inverse_id(), Kernel::power(1.5, 0.5)};
    for (const auto& h : kernels) {
        for (double X : kGrid) {
            auto rows = catalog_check(table(), CatalogName::daval_general, X, h);
            REQUIRE(rows.size() == 2);
            INFO(rows[1].name << " X=" << X);
            CHECK(rows[1].residual <= 1e-9);
        }
    }
    auto at2 = catalog_check(table(), CatalogName::daval_general, 2.0, Kernel::one());
    CHECK(std::abs(at2[1].lhs - 0.5) < 1e-15);
    CHECK(std::abs(at2[1].rhs - 0.5) < 1e-14);
    CHECK(std::abs(at2[0].rhs - 0.19314718055994531) < 1e-12);
}

TEST_CASE("raw identity residuals") {
    for (const auto& spec : ofd_catalog()) {
        OfdEvaluator ev(table(), spec, 1000.0);
        for (double X : kGrid) {
            auto r = ev.evaluate(X);
            INFO(spec.name << " X=" << X);
            CHECK(r.residual <= 1e-9);
            CHECK(r.residual <= std::max(r.budget, 1e-12));
        }
    }
}

TEST_CASE("Dirac kernel against the direct Meissel sum") {
    const auto spec = catalog_spec(CatalogName::meissel);
    OfdEvaluator ev(table(), spec, 500.0);
    for (int X = 1; X <= 500; ++X) {
        auto r = ev.evaluate(X);
        // For integer X, sum mu(n) X/n - M(X) = X m(X) - M(X).
        double direct = 0.0, M = 0.0;
        for (int n = 1; n <= X; ++n) {
            direct += table().mu(n) * double(X) / n;
            M += table().mu(n);
        }
        CHECK(std::abs(r.lhs.real() - (direct - M)) < 1e-11);
        CHECK(r.residual < 1e-11);
    }
}

TEST_CASE("refinement does not change the value") {
    // Splitting every piece in two must agree with the single-piece closed form.
    for (auto p : {cplx(-0.5, 0.0), cplx(-1.5, 2.0)})
        for (int j = 0; j < 2; ++j) {
            cplx whole = integral_power_log(p, j, 1.0, 17.0);
            cplx split = 0.0;
            const int k = 64;
            for (int i = 0; i < k; ++i)
                split += integral_power_log(p, j, 1.0 + 16.0 * i / k, 1.0 + 16.0 * (i + 1) / k);
            CHECK(std::abs(whole - split) < 1e-13 * std::abs(whole));
        }
    const auto spec = mqdex_kernel(cplx(1.0, 2.0), Modulus::from_value(6));
    auto a = OfdEvaluator(table(), spec, 300.0).evaluate(250.5);
    auto b = OfdEvaluator(table(), spec, 1000.0).evaluate(250.5);
    CHECK(std::abs(a.rhs - b.rhs) == 0.0);
}

TEST_CASE("guards") {
    const auto spec = catalog_spec(CatalogName::elmarraki);
    CHECK_THROWS_AS(evaluate_ofd(table(), spec, 0.5), DomainError);
    CHECK_THROWS_AS(evaluate_ofd(table(), spec, 1e6), CapacityError);
    CHECK_THROWS_AS(OfdEvaluator(table(), spec, 1000.0, 100), CapacityError);
    OfdEvaluator ev(table(), spec, 100.0);
    CHECK_THROWS_AS(ev.evaluate(101.0), CapacityError);
    CHECK_THROWS_AS(Kernel::dirac_at_1()(0.5), DomainError);
}
