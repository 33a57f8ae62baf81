#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mobius/error.hpp"
#include "mobius/harmonic.hpp"

using namespace mobius;

namespace {

const ArithmeticTable& table() {
    static const auto t = ArithmeticTable::build(100'000);
    return t;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Direct definitions, written out independently of the piecewise forms.
double frac(double t) { return t - std::floor(t); }
double alpha_direct(double t) { return (1 - 2 * frac(t)) / t - (frac(t) - frac(t) * frac(t)) / (t * t); }

double simpson(auto f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

double harmonic_sum(double X) {
    double s = 0;
    for (std::uint64_t n = 2; n <= std::uint64_t(X); ++n) s += table().mangoldt(n) / n;
    return s;
}

}  // namespace

TEST_CASE("alpha and beta") {
    CHECK(near(alpha(1.5), -1.0 / 9, 1e-16));
    CHECK(near(beta(1.5), 1.0 / 6, 1e-16));
    CHECK(near(alpha(0.25), -1.0, 1e-15));
    for (double X : {3.0, 7.0, 100.0}) CHECK(near(alpha(X), 1.0 / X, 1e-16));
    // (2/X^2) sum_{n<=X} n = 1 + alpha(X)
    for (double X : {0.5, 1.0, 2.7, 3.0, 10.25, 999.9}) {
        double s = 0;
        for (int n = 1; n <= int(X); ++n) s += n;
        CHECK(near(2 * s / (X * X), 1 + alpha(X), 1e-13));
        CHECK(near(alpha(X), alpha_direct(X), 1e-13));
    }
    CHECK_THROWS_AS(alpha(0.0), DomainError);
    CHECK_THROWS_AS(beta(-1.0), DomainError);
}

TEST_CASE("sawtooth pieces and the sign change at k + t_k") {
    for (std::uint64_t k = 1; k <= 10'000; ++k) {
        const auto p = sawtooth_piece(k);
        CHECK(p.t_k > 0.0);
        CHECK(p.t_k < 0.5);
        const double z = double(k) + p.t_k;
        CHECK(std::fabs(p.alpha(z)) <= 1e-12);
        CHECK(p.alpha(z - 1e-6) > 0.0);
        CHECK(p.alpha(z + 1e-6) < 0.0);
        if (k % 997 == 0) {
            const double x = k + 0.37;
            CHECK(near(x * x * p.alpha(x), double(k * k + k) - x * x, 1e-6 * x * x * 1e-9));
        }
    }
}

TEST_CASE("integrals of alpha") {
    CHECK(near(neg_alpha_integral(1).value, (std::log(2.0) - 0.5) / 2, 1e-16));
    const auto v = neg_alpha_integral(1'000'000);
    const double target = (1 - std::numbers::egamma) / 2;
    CHECK(near(v.value, target, 1e-6));
    CHECK(v.value <= target);
    CHECK(target - v.value <= v.tail_bound);
    const auto c = alpha_integral(1'000'000);
    CHECK(near(c.value, std::numbers::egamma - 0.5, 1e-6));
    // per-piece closed form against quadrature of the negative part
    for (std::uint64_t k : {1, 2, 5, 40}) {
        const double a = k + sawtooth_piece(k).t_k;
        const double kk = double(k);
        const double q = simpson([kk](double x) { return -(kk * (kk + 1) - x * x) / (x * x * x); }, a, kk + 1, 2000);
        const double closed = neg_alpha_integral(k).value - (k > 1 ? neg_alpha_integral(k - 1).value : 0.0);
        CHECK(near(q, closed, 1e-12));
    }
    CHECK(verify_neg_alpha(1'000'000, 1e-6).verdict == Verdict::pass);
}

TEST_CASE("Stirling remainder") {
    CHECK(near(stirling_eps(1.0), 0.08106146679532726, 1e-15));
    // direct evaluation for moderate t
    for (double t : {1.3, 2.0, 5.5, 9.99, 10.0, 12.75, 40.2}) {
        double s = 0;
        for (int n = 2; n <= int(t); ++n) s += std::log(double(n));
        const double direct = s - (t * std::log(t) - t + (0.5 - frac(t)) * std::log(t) + kStirlingConstant);
        CHECK(near(stirling_eps(t), direct, 1e-13));
    }
    CHECK(std::fabs(stirling_eps(10.0)) <= 1.0 / 80);
    std::vector<double> ts;
    for (double t = 1; t < 1e5; t *= 1.37) ts.push_back(t);
    CHECK(verify_stirling_eps(ts).verdict == Verdict::pass);
    CHECK_THROWS_AS(stirling_eps(0.5), DomainError);
}

TEST_CASE("sawtooth log integral and the integrated Stirling formula") {
    for (double X : {1.0, 1.5, 2.0, 3.7, 17.2, 64.0}) {
        double q = 0;
        for (int n = 1; n < int(std::ceil(X)); ++n) {
            const double b = std::min(X, n + 1.0);
            q += simpson([n](double t) { return (0.5 - (t - n)) * std::log(t); }, n, b, 2000);
        }
        CHECK(near(sawtooth_log_integral(X), q, 1e-12));
        // integral_0^X sum_{n<=t} log n dt = sum_{n<=X} log n (X - n)
        double s = 0;
        for (int n = 2; n <= int(X); ++n) s += std::log(double(n)) * (X - n);
        CHECK(near(integrated_stirling(X), s, 1e-11 * (1 + s)));
    }
    std::vector<double> Xs;
    for (double X = 1; X < 1e5; X = X * 1.21 + 0.3) Xs.push_back(X);
    CHECK(verify_second_mean_value(Xs).verdict == Verdict::pass);
}

TEST_CASE("f and g") {
    CHECK(near(f_of(table(), 4.0), -0.50022987947722841, 1e-13));
    CHECK(near(g_of(12.0), -0.011679, 1e-6));
    for (double X : {1.0, 2.0, 2.5, 4.0, 12.0, 12.9, 100.3, 1000.0, 54321.5}) {
        CHECK(near(harmonic_sum(X), std::log(X) + f_of(table(), X), 1e-9));
    }
    for (double X = 12; X <= 1e5; X *= 1.13) CHECK(f_of(table(), X) <= g_of(X));
    for (double X = 1; X < 1e6; X *= 1.5) {
        CHECK(g_prime(X) < 0.0);
        if (X < 1.5) continue;
        const double h = 1e-4 * X;
        CHECK(near(g_prime(X), (g_of(X + h) - g_of(X - h)) / (2 * h), 1e-5 * std::fabs(g_prime(X))));
    }
    const auto r = verify_f_le_g(table(), 100'000);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.margin > 0.0);
}

TEST_CASE("integral identity with psi and with the indicator") {
    const auto one = integral_identity_check(table(), 2.0, PhiChoice::indicator);
    CHECK(near(one.lhs, 0.5, 1e-16));
    CHECK(std::fabs(one.residual) <= 1e-12);
    for (double X : {1.0, 2.0, 7.5, 10.0, 123.4, 5000.0}) {
        CHECK(std::fabs(integral_identity_check(table(), X, PhiChoice::psi).residual) <= 1e-9);
        CHECK(std::fabs(integral_identity_check(table(), X, PhiChoice::indicator).residual) <= 1e-12);
    }
    const auto at1 = integral_identity_check(table(), 1.0, PhiChoice::psi);
    CHECK(at1.lhs == 0.0);
    CHECK(at1.rhs == 0.0);
    CHECK(verify_integral_identity(table(), 2000, 1e-9).verdict == Verdict::pass);
}

TEST_CASE("harmonic inequality and Hanson's bound") {
    const auto rows = verify_harmonic(table(), 100'000);
    REQUIRE(rows.size() == 9);
    CHECK(rows[0].verdict == Verdict::pass);
    for (const auto& r : rows) CHECK(r.verdict == Verdict::pass);
    CHECK(rows[3].X == 4.0);
    CHECK(near(rows[3].lhs, 0.8860644816426623, 1e-15));
    const auto small = verify_harmonic(table(), 1);
    CHECK(small.front().margin == 0.0);
    CHECK(small.front().verdict == Verdict::pass);
    CHECK(verify_hanson(table(), 100'000).verdict == Verdict::pass);
    CHECK_THROWS_AS(verify_harmonic(table(), 200'000), CapacityError);
}
