#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "mobius/bounds.hpp"
#include "mobius/delta_sign.hpp"
#include "mobius/error.hpp"
#include "mobius/modulus.hpp"

using namespace mobius;

namespace {

const ArithmeticTable& table() {
    static const auto t = ArithmeticTable::build(10'000);
    return t;
}

Modulus Q(std::uint64_t q) { return Modulus::from_value(q); }

}  // namespace

TEST_CASE("interval maximum dominates pointwise Delta and is attained at an end") {
    for (std::uint64_t q : {1, 2, 6, 30}) {
        for (std::uint64_t N : {1, 2, 3, 7, 10, 25, 40}) {
            for (double eps : {0.0, 1e-6, 0.01, 0.3, 1.0}) {
                const auto m = interval_max(table(), N, Q(q), eps);
                double best = -1e300;
                for (int i = 0; i < 64; ++i) {
                    const double X = N + i / 64.0;
                    const auto d = delta_q(table(), X, Q(q), eps);
                    CHECK(d.value <= m.value + 1e-12);
                    best = std::max(best, d.value);
                }
                // supremum as X -> N+1 from the left
                const double X = std::nextafter(double(N + 1), 0.0);
                best = std::max(best, delta_q(table(), X, Q(q), eps).value);
                CHECK(std::fabs(best - m.value) <= 1e-9);
            }
        }
    }
}

TEST_CASE("interval maximum at the left end only") {
    const auto m = interval_max(table(), 5, Q(1), 0.2, 5.0);
    CHECK(std::fabs(m.value - delta_q(table(), 5.0, Q(1), 0.2).value) <= 1e-12);
    CHECK_THROWS_AS(interval_max(table(), 5, Q(1), 0.2, 6.5), DomainError);
    CHECK_THROWS_AS(interval_max(table(), 5, Q(1), 1.5), DomainError);
}

TEST_CASE("derivative bound dominates finite differences") {
    for (std::uint64_t q : {1, 2, 6}) {
        for (std::uint64_t N : {1, 4, 10, 40}) {
            const double M = derivative_bound(Q(q), N);
            double worst = 0.0;
            for (int j = 0; j <= 20; ++j) {
                const double X = N + j / 20.0 * 0.999;
                for (int i = 0; i < 200; ++i) {
                    const double a = i / 200.0, b = (i + 1) / 200.0;
                    const double d = (delta_q(table(), X, Q(q), b).value - delta_q(table(), X, Q(q), a).value) / (b - a);
                    worst = std::max(worst, std::fabs(d));
                }
            }
            CHECK(worst <= M);
        }
    }
    // N = 10, q = 1: the lower envelope peaks inside (0, 1) at 3.44248...
    const double M = derivative_bound(Q(1), 10);
    CHECK(M >= 3.44248);
    CHECK(M <= 3.44248 + 1e-3);
}

TEST_CASE("sign certificate for q = 1 up to 10.8") {
    const auto c = certify_sign(table(), Q(1), 10.8);
    CHECK(c.status == CertificateStatus::certified_nonpositive);
    REQUIRE(c.intervals.size() == 10);
    CHECK(c.intervals.back().X_hi == 10.8);
    for (const auto& r : c.intervals) {
        CHECK(r.steps.front().eps == 0.0);
        for (const auto& s : r.steps) CHECK(s.t < -1e-8);
    }
    const auto replay = replay_certificate(table(), c);
    CHECK_MESSAGE(replay.ok, replay.message);
    const auto sound = check_stepping(table(), c, 100, 12345);
    CHECK(sound.samples == 100);
    CHECK(sound.worst_slack >= 0.0);
    CHECK(certificate_report(c).verdict == Verdict::pass);
}

TEST_CASE("sign certificate for q = 1 fails at 11") {
    const auto c = certify_sign(table(), Q(1), 11.0);
    CHECK(c.status == CertificateStatus::fail);
    CHECK(c.fail_N == 10);
    CHECK(c.fail_value > 5e-4);
    CHECK(c.fail_value < 1e-3);
    CHECK(certificate_report(c).verdict == Verdict::fail);
    const auto replay = replay_certificate(table(), c);
    CHECK_MESSAGE(replay.ok, replay.message);
}

TEST_CASE("sign certificate for q = 2 up to 41") {
    const auto c = certify_sign(table(), Q(2), 41.0);
    CHECK(c.status == CertificateStatus::certified_nonpositive);
    CHECK(c.intervals.size() == 40);
    const auto replay = replay_certificate(table(), c);
    CHECK_MESSAGE(replay.ok, replay.message);
    CHECK(check_stepping(table(), c, 100, 7).worst_slack >= 0.0);
}

TEST_CASE("certificate JSON round trip and tamper detection") {
    const auto c = certify_sign(table(), Q(1), 6.5);
    const auto j = certificate_to_json(c);
    CHECK(j["X0"] == "6.5");
    const auto back = certificate_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.intervals.size() == c.intervals.size());
    CHECK(back.intervals[3].steps.size() == c.intervals[3].steps.size());
    CHECK(back.intervals[3].steps[2].t == c.intervals[3].steps[2].t);
    CHECK(replay_certificate(table(), back).ok);

    auto bad = back;
    bad.intervals[2].steps[1].t *= 0.5;
    CHECK_FALSE(replay_certificate(table(), bad).ok);
    bad = back;
    bad.intervals[2].M *= 2.0;
    CHECK_FALSE(replay_certificate(table(), bad).ok);
    bad = back;
    bad.intervals.pop_back();
    CHECK_FALSE(replay_certificate(table(), bad).ok);
    bad = back;
    bad.intervals[1].steps.pop_back();
    CHECK_FALSE(replay_certificate(table(), bad).ok);
    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"format", "other"}}), DomainError);
}

TEST_CASE("cap scans") {
    const auto r = cap_scan(table(), Q(1), 47.0, 0.014);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.lhs > 0.0);
    CHECK(r.lhs < 0.014);
    // the cap scan sees at least the failing value near X = 11
    CHECK(r.lhs >= 7e-4);
    CHECK(cap_scan(table(), Q(1), 47.0, 1e-4).verdict == Verdict::fail);
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(certify_sign(table(), Q(1), 1.0), DomainError);
    CHECK_THROWS_AS(certify_sign(table(), Q(1), 5.0, 1e-12), DomainError);
    CHECK_THROWS_AS(derivative_bound(Q(1), 0), DomainError);
    CHECK_THROWS_AS(cap_scan(table(), Q(1), 5.0, 0.1, 0.0), DomainError);
}

TEST_CASE("the rows below 10.9") {
    CHECK(certify_sign(table(), Q(1), 10.85).status == CertificateStatus::certified_nonpositive);
    const auto c = certify_sign(table(), Q(1), 10.9, 1e-9, 0.16);
    CHECK(c.status == CertificateStatus::certified_nonpositive);
    CHECK(replay_certificate(table(), c).ok);
    // without the eps restriction the sign changes near eps = 0.168 as X -> 10.9
    const auto full = certify_sign(table(), Q(1), 10.9);
    CHECK(full.status != CertificateStatus::certified_nonpositive);
    CHECK(full.fail_N == 10);
    CHECK(full.fail_eps > 0.16);
    CHECK(full.fail_eps < 0.17);
    CHECK_THROWS_AS(certify_sign(table(), Q(1), 5.0, 1e-9, 0.0), DomainError);
}
