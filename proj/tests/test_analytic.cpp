#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mobius/analytic.hpp"
#include "mobius/error.hpp"

using namespace mobius;

namespace {

// mpmath altzeta and its derivative at 40 digits.
struct EtaRow {
    double sigma, t, re, im, dre, dim;
};
const EtaRow kEta[] = {
    {0.3, 0, 0.56490159144754604004, 0.0, 0.20663886554045190926, 0.0},
    {0.6, 0, 0.62389077976882450491, 0.0, 0.18655151742224441723, 0.0},
    {1, 0, 0.69314718055994530942, 0.0, 0.15986890374243097176, 0.0},
    {1.5, 0, 0.76514702462540794537, 0.0, 0.1286747508303571901, 0.0},
    {2, 0, 0.82246703342411321824, 0.0, 0.10131657816350450189, 0.0},
    {0.3, 1, 0.59950667283779873816, 0.2080297319584532101, 0.21021137422785325169, -0.072397790643012484338},
    {0.6, 5, 1.7000944780069710331, 0.19479520238216736605, -0.45358841567345139431, -0.28118166852890017603},
    {1, 1, 0.7265597750624632632, 0.15809586390120732436, 0.15414232732539620808, -0.068229853516130616379},
    {1.5, 5, 1.3825784574102035455, 0.042273666434617142396, -0.26392372142327016291, -0.089183638705965205583},
    {2, 1, 0.84768916483741347452, 0.098268389570016172467, 0.09201082567887050526, -0.050481637227524034291},
    {0.8, 5, 1.6142434397008133858, 0.14480611620704220015, -0.40541445032373061362, -0.22085449320435352849},
    {1.2, -3, 1.0355112246391670486, -0.34432546157221562239, 0.026026895954662333186, 0.21352512165949881393},
};

constexpr double kLog2 = std::numbers::ln2;

}  // namespace

TEST_CASE("eta at 1 and 2") {
    auto e1 = eta(1.0, 1e-13);
    auto e2 = eta(2.0, 1e-13);
    CHECK(std::abs(e1.value - kLog2) <= 1e-12);
    CHECK(std::abs(e2.value - std::numbers::pi * std::numbers::pi / 12) <= 1e-12);
    CHECK(e1.error <= 1e-13);
}

TEST_CASE("eta and eta' against high precision values") {
    for (const auto& r : kEta) {
        const cplx s(r.sigma, r.t);
        auto C = eta(s, 1e-12);
        auto Cp = eta_prime(s, 1e-12);
        CAPTURE(r.sigma);
        CAPTURE(r.t);
        CHECK(std::abs(C.value - cplx(r.re, r.im)) <= C.error + 1e-15);
        CHECK(std::abs(Cp.value - cplx(r.dre, r.dim)) <= Cp.error + 1e-15);
        CHECK(C.error <= 1e-12);
        CHECK(Cp.error <= 1e-12);
    }
}

TEST_CASE("eta tolerance that cannot be met") {
    CHECK_THROWS_AS(eta(cplx(0.05, 60.0), 1e-30), PrecisionError);
    CHECK_THROWS_AS(eta(cplx(-0.5, 0), 1e-10), DomainError);
}

TEST_CASE("alternating partial sums obey their tail bounds") {
    const double four = 1 - 0.5 + 1.0 / 3 - 0.25;
    CHECK(alternating_sum(4, 1.0).real() == doctest::Approx(four));
    CHECK(std::abs(four - kLog2) <= 0.25);
    for (const auto& r : kEta) {
        const cplx s(r.sigma, r.t);
        const cplx C(r.re, r.im), Cp(r.dre, r.dim);
        for (double X : {1.0, 2.5, 7.0, 30.0, 101.5, 1000.0}) {
            CHECK(std::abs(alternating_sum(X, s) - C) <= alternating_tail_bound(X, s) * (1 + 1e-12));
            const cplx main = C * std::log(X) + Cp;
            CHECK(std::abs(alternating_log_sum(X, s) - main) <=
                  alternating_log_tail_bound(X, s) * (1 + 1e-12) + 1e-13);
        }
    }
}

TEST_CASE("zeta values") {
    auto p2 = ComplexParameter::make(2.0, 1.0);
    CHECK(std::abs(zeta(p2).value - std::numbers::pi * std::numbers::pi / 6) <= 1e-12);
    CHECK(std::abs(zeta_prime(p2).value - (-0.93754825431584375)) <= 1e-12);
    for (double e : {0.01, 0.1, 0.5, 1.0}) {
        auto z = zeta(ComplexParameter::make(1 + e, 1.0)).value.real();
        CHECK(z > 1 / e);
        CHECK(z <= std::exp(std::numbers::egamma * e) / e);
    }
    auto near = zeta(ComplexParameter::make(1.001, 1.0));
    CHECK(std::abs(near.value.real() - 1000.577288476011626848) <= near.error);
    CHECK(near.error < 1e-8);
    CHECK_THROWS_AS(zeta(ComplexParameter::make(1.0, 0.5)), PoleError);
    CHECK_THROWS_AS(zeta_prime(ComplexParameter::make(1.0, 0.5)), PoleError);
}

TEST_CASE("parameter guards") {
    const double step = 2 * std::numbers::pi / kLog2;
    CHECK_THROWS_AS(ComplexParameter::make(cplx(1, step), 0.5), DomainError);
    CHECK_THROWS_AS(ComplexParameter::make(cplx(1, -2 * step), 0.5), DomainError);
    CHECK_NOTHROW(ComplexParameter::make(cplx(1, step / 2), 0.5));
    CHECK_THROWS_AS(ComplexParameter::make(0.4, 0.5), DomainError);
    CHECK_THROWS_AS(ComplexParameter::make(0.4, 0.0), DomainError);
}

TEST_CASE("eta equals (1 - 2^{1-s}) zeta on a grid") {
    for (double sigma : {0.3, 0.6, 1.0, 1.5, 2.0})
        for (double t : {0.0, 1.0, 5.0}) {
            if (sigma == 1.0 && t == 0.0) continue;
            const cplx s(sigma, t);
            auto p = ComplexParameter::make(s, sigma / 2);
            auto C = eta(s, 1e-12);
            auto z = zeta(p);
            CHECK(std::abs(C.value - two_factor(s) * z.value) <= C.error + z.error * std::abs(two_factor(s)) + 1e-15);
        }
}

TEST_CASE("phi_s") {
    CHECK(std::abs(phi_s(Modulus::from_value(6), 1.0) - 2.0) < 1e-14);
    CHECK(std::abs(phi_s(Modulus::from_value(6), 2.0) - 24.0) < 1e-12);
    CHECK(std::abs(phi_s(Modulus::from_value(4), 0.5) - 2 * (1 - std::sqrt(0.5))) < 1e-14);
    for (cplx s : {cplx(1, 0), cplx(0.5, 2), cplx(1.3, -1)}) {
        const auto a = phi_s(Modulus::from_value(8), s) * phi_s(Modulus::from_value(15), s);
        const auto b = phi_s(Modulus::from_value(120), s);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
        const auto r = std::exp(s * std::log(120.0)) / b;
        CHECK(std::abs(q_over_phi_s(Modulus::from_value(120), s) - r) <= 1e-12 * std::abs(r));
    }
}

TEST_CASE("constants at s = 1 and s = 2") {
    auto k1 = constants(ComplexParameter::make(1.0, 0.5), 10.0);
    CHECK(std::abs(k1.c - kLog2) < 1e-15);
    CHECK(k1.e == doctest::Approx(kLog2).epsilon(1e-15));
    CHECK(std::abs(k1.K1) == 0.0);
    CHECK(std::abs(k1.K2 - 1 / kLog2) < 1e-12);
    CHECK(std::abs(k1.cprime + kLog2 * kLog2 / 2) < 1e-15);
    auto k2 = constants(ComplexParameter::make(2.0, 1.0), 10.0);
    CHECK(std::abs(k2.c - 0.5) < 1e-15);
    CHECK(delta_flag(7.5, 0.6) == 1.0);
    CHECK(delta_flag(1.5, 0.6) == 2.0);
}

TEST_CASE("c and c' are continuous across the series switch") {
    for (double r : {0.49999, 0.50001}) {
        const cplx s = 1.0 + r * std::polar(1.0, 0.7);
        const cplx d = s - 1.0;
        CHECK(std::abs(c_factor(s) - two_factor(s) / d) < 1e-15);
        const cplx closed = (two_factor_prime(s) * d - two_factor(s)) / (d * d);
        CHECK(std::abs(c_factor_prime(s) - closed) < 1e-14);
    }
}

TEST_CASE("K1, K2 identities and stable combinations") {
    for (double sigma : {0.6, 1.0, 1.5, 2.0})
        for (double t : {0.0, 1.0, 5.0}) {
            const cplx s(sigma, t);
            auto p = ComplexParameter::make(s, sigma / 2);
            auto k = constants(p, 50.0);
            CHECK(std::abs(k.K1 * k.C + (s - 1.0)) < 1e-14);
            CHECK(std::abs(k.K2 * k.C * k.C - (k.C + (s - 1.0) * k.Cprime)) < 1e-14);
            auto combo = zeta_combos(s);
            CHECK(std::abs(-k.K1 * k.c - combo.inv_zeta.value) < 1e-12);
            if (sigma == 1.0 && t == 0.0) continue;
            auto z = zeta(p).value;
            auto zp = zeta_prime(p).value;
            CHECK(std::abs(combo.inv_zeta.value - 1.0 / z) < 1e-12);
            CHECK(std::abs(combo.zeta_prime_ratio.value - zp / (z * z)) < 1e-11);
            const double lhs = kLog2 / std::abs(c_factor(s) * z);
            const double rhs = kLog2 * std::abs(s - 1.0) / std::abs(two_factor(s) * z);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
            CHECK(k.Xi2 > 0);
            CHECK(k.Xi1 > 0);
        }
}

TEST_CASE("near s = 1 the stable forms match the Stieltjes expansion") {
    const double g0 = std::numbers::egamma, g1 = -0.072815845483676724861, g2 = -0.0096903631928723184845;
    for (double e : {1e-3, 1e-4, 1e-6}) {
        const double z = 1 / e + g0 - g1 * e + g2 * e * e / 2;
        auto combo = zeta_combos(1 + e);
        CHECK(combo.inv_zeta.value.real() == doctest::Approx(1 / z).epsilon(1e-10));
        const double zp = -1 / (e * e) - g1 + g2 * e;
        CHECK(combo.zeta_prime_ratio.value.real() == doctest::Approx(zp / (z * z)).epsilon(1e-8));
    }
    CHECK(std::abs(zeta_combos(1.0).zeta_prime_ratio.value + 1.0) < 1e-12);
}

TEST_CASE("eps zeta near 0") {
    auto v = eps_zeta(1e-8);
    CHECK(v.value >= 1.0);
    CHECK(v.value <= 1.0 + 1e-6);
    CHECK(v.value == doctest::Approx(1.0000000057721566563).epsilon(1e-13));
    CHECK(eps_zeta(0.0).value == 1.0);
}

TEST_CASE("zeta inequality chains") {
    for (double e : {1e-3, 1e-2, 0.1, 0.5, 1.0}) {
        auto checks = zeta_inequalities(e);
        REQUIRE(checks.size() == 6);
        for (const auto& c : checks) {
            CAPTURE(e);
            CAPTURE(c.name);
            CHECK(c.lower == Verdict::pass);
            CHECK(c.upper == Verdict::pass);
        }
    }
    auto one = zeta_inequalities(1.0);
    CHECK(one[0].middle.value == doctest::Approx(1.6449340668482264));
    CHECK(one[0].right.value == doctest::Approx(std::exp(std::numbers::egamma)));
}
