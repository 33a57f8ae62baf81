#include "mobius/delta_sign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "mobius/analytic.hpp"
#include "mobius/error.hpp"
#include "mobius/format.hpp"
#include "mobius/summation.hpp"
#include "mobius/sums.hpp"

namespace mobius {

namespace {

constexpr double kUnit = 0x1p-53;

// (mu(n)/n, log n) for the coprime squarefree n <= N.
struct Terms {
    std::vector<double> w, logn;
    double mN = 0.0;  // m_q(N)
    double mN_err = 0.0;
};

Terms collect(const ArithmeticTable& table, std::uint64_t N, const Modulus& q) {
    table.require(N);
    Terms t;
    CompensatedSum m;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int mu = table.mu(n);
        if (mu == 0 || !q.coprime_to(n)) continue;
        t.w.push_back(mu / double(n));
        t.logn.push_back(std::log(double(n)));
        m += t.w.back();
    }
    t.mN = m.value();
    t.mN_err = m.error_bound(1.0);
    return t;
}

// expm1(-eps x)/eps, equal to -x at eps = 0.
double damped(double eps, double x) { return eps > 0.0 ? std::expm1(-eps * x) / eps : -x; }

Estimate interval_max_terms(const Terms& t, std::uint64_t N, const Modulus& q, double eps, double X_hi) {
    CompensatedSum A;
    for (std::size_t i = 0; i < t.w.size(); ++i) A += t.w[i] * damped(eps, t.logn[i]);
    // (1 - X^-eps)/eps is increasing in X; pick the end by the sign of m_q(N).
    const double X = t.mN >= 0.0 ? X_hi : double(N);
    const double grow = -damped(eps, std::log(X));
    const double middle = t.mN * grow;
    double main, main_err;
    if (eps == 0.0) {
        main = q.totient_ratio();
        main_err = 2.0 * kUnit * main;
    } else {
        const auto ez = eps_zeta(eps);
        const double K = q_over_phi_s(q, 1.0 + eps).real();
        main = K / ez.value;
        main_err = K * ez.error / (ez.value * ez.value) + 4.0 * kUnit * main;
    }
    const double value = A.value() + middle - main;
    const double err = A.error_bound(4.0) + t.mN_err * grow + main_err +
                       4.0 * kUnit * (std::fabs(A.value()) + std::fabs(middle) + main);
    return {value, err};
}

double eps_step(double eps, double t, double budget, double M) { return eps - (t + budget) / M; }

}  // namespace

const std::vector<std::string>& delta_theorem_ids() {
    static const std::vector<std::string> ids = {"delta_sign", "delta_cap"};
    return ids;
}

double derivative_bound(const Modulus& q, std::uint64_t N, int cells) {
    if (N < 1) throw DomainError("derivative_bound: N must be at least 1");
    if (cells < 1) throw DomainError("derivative_bound: need at least one cell");
    const double logX = std::log(double(N + 1));
    double primes = 0.0;
    for (auto p : q.primes()) primes += std::log(double(p)) / (double(p) - 1.0);
    // Upper envelope: increasing in eps, so its largest modulus is at eps = 0 or 1.
    auto ez_low = [](double e) {
        const auto z = eps_zeta(e);
        return z.value - z.error;
    };
    auto ez_high = [](double e) {
        const auto z = eps_zeta(e);
        return z.value + z.error;
    };
    const double U0 = logX + primes - 0.5 / ez_high(0.0);
    const double U1 = logX + primes - 1.0 / (2.0 * 4.0 * ez_low(1.0));
    double best = std::max(std::fabs(U0), std::fabs(U1));
    // Lower envelope in modulus: log X + (1+2e)/((1+e) e zeta(1+e)).
    double prev = ez_low(0.0);
    for (int i = 0; i < cells; ++i) {
        const double b = double(i + 1) / cells;
        const double next = ez_low(b);
        const double L = logX + (1.0 + 2.0 * b) / (1.0 + b) / prev;
        best = std::max(best, L);
        prev = next;
    }
    return q.totient_ratio() * best * (1.0 + 16.0 * kUnit);
}

Estimate interval_max(const ArithmeticTable& table, std::uint64_t N, const Modulus& q, double eps, double X_hi) {
    if (N < 1) throw DomainError("interval_max: N must be at least 1");
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("interval_max: eps must lie in [0, 1]");
    if (!(X_hi >= double(N) && X_hi <= double(N + 1))) throw DomainError("interval_max: X_hi must lie in [N, N+1]");
    return interval_max_terms(collect(table, N, q), N, q, eps, X_hi);
}

Estimate interval_max(const ArithmeticTable& table, std::uint64_t N, const Modulus& q, double eps) {
    return interval_max(table, N, q, eps, double(N + 1));
}

std::string to_string(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::certified_nonpositive: return "certified_nonpositive";
        case CertificateStatus::fail: return "FAIL";
        case CertificateStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

DeltaCertificate certify_sign(const ArithmeticTable& table, const Modulus& q, double X0, double error_budget,
                              double eps_max) {
    if (!(X0 > 1.0)) throw DomainError("certify_sign: X0 must exceed 1");
    if (!(eps_max > 0.0 && eps_max <= 1.0)) throw DomainError("certify_sign: eps_max must lie in (0, 1]");
    if (!(error_budget >= 1e-9)) throw DomainError("certify_sign: error budget must be at least 1e-9");
    table.require(floor_cut(X0));
    DeltaCertificate c;
    c.q = q.value();
    c.X0 = X0;
    c.error_budget = error_budget;
    c.eps_max = eps_max;
    for (std::uint64_t N = 1; double(N) < X0; ++N) {
        IntervalRecord rec;
        rec.N = N;
        rec.X_hi = std::min(double(N + 1), X0);
        rec.M = derivative_bound(q, N);
        const Terms terms = collect(table, N, q);
        double eps = 0.0;
        while (eps < eps_max) {
            const auto t = interval_max_terms(terms, N, q, eps, rec.X_hi);
            rec.steps.push_back({eps, t.value});
            if (t.value >= 0.0) {
                c.status = CertificateStatus::fail;
            } else if (t.value > -10.0 * error_budget || t.error > error_budget) {
                c.status = CertificateStatus::inconclusive;
            }
            if (c.status != CertificateStatus::certified_nonpositive) {
                c.fail_N = N;
                c.fail_eps = eps;
                c.fail_value = t.value;
                c.intervals.push_back(std::move(rec));
                return c;
            }
            eps = eps_step(eps, t.value, error_budget, rec.M);
        }
        c.intervals.push_back(std::move(rec));
    }
    return c;
}

nlohmann::json certificate_to_json(const DeltaCertificate& c) {
    using nlohmann::json;
    json j;
    j["format"] = "mobius-delta-certificate";
    j["version"] = 1;
    j["q"] = c.q;
    j["X0"] = format_real(c.X0);
    j["error_budget"] = format_real(c.error_budget);
    j["eps_max"] = format_real(c.eps_max);
    j["status"] = to_string(c.status);
    if (c.status != CertificateStatus::certified_nonpositive)
        j["failure"] = {{"N", c.fail_N}, {"eps", format_real(c.fail_eps)}, {"value", format_real(c.fail_value)}};
    else
        j["failure"] = nullptr;
    json intervals = json::array();
    for (const auto& r : c.intervals) {
        json steps = json::array();
        for (const auto& s : r.steps) steps.push_back({format_real(s.eps), format_real(s.t)});
        intervals.push_back({{"N", r.N}, {"X_hi", format_real(r.X_hi)}, {"M", format_real(r.M)}, {"steps", steps}});
    }
    j["intervals"] = intervals;
    return j;
}

DeltaCertificate certificate_from_json(const nlohmann::json& j) {
    auto real = [](const nlohmann::json& v) {
        const auto& s = v.get_ref<const std::string&>();
        std::size_t pos = 0;
        const double x = std::stod(s, &pos);
        if (pos != s.size()) throw DomainError("certificate: malformed real '" + s + "'");
        return x;
    };
    if (j.value("format", "") != "mobius-delta-certificate" || j.value("version", 0) != 1)
        throw DomainError("certificate: unknown format");
    DeltaCertificate c;
    c.q = j.at("q").get<std::uint64_t>();
    c.X0 = real(j.at("X0"));
    c.error_budget = real(j.at("error_budget"));
    c.eps_max = real(j.at("eps_max"));
    const auto status = j.at("status").get<std::string>();
    if (status == "certified_nonpositive")
        c.status = CertificateStatus::certified_nonpositive;
    else if (status == "FAIL")
        c.status = CertificateStatus::fail;
    else if (status == "inconclusive")
        c.status = CertificateStatus::inconclusive;
    else
        throw DomainError("certificate: unknown status '" + status + "'");
    if (!j.at("failure").is_null()) {
        c.fail_N = j["failure"].at("N").get<std::uint64_t>();
        c.fail_eps = real(j["failure"].at("eps"));
        c.fail_value = real(j["failure"].at("value"));
    }
    for (const auto& r : j.at("intervals")) {
        IntervalRecord rec;
        rec.N = r.at("N").get<std::uint64_t>();
        rec.X_hi = real(r.at("X_hi"));
        rec.M = real(r.at("M"));
        for (const auto& s : r.at("steps")) rec.steps.push_back({real(s.at(0)), real(s.at(1))});
        c.intervals.push_back(std::move(rec));
    }
    return c;
}

ReplayResult replay_certificate(const ArithmeticTable& table, const DeltaCertificate& c) {
    ReplayResult out;
    auto reject = [&out](std::string msg) {
        out.ok = false;
        out.message = std::move(msg);
        return out;
    };
    const Modulus q = Modulus::from_value(c.q);
    const double budget = c.error_budget;
    if (c.intervals.empty()) return reject("no intervals");
    for (std::size_t i = 0; i < c.intervals.size(); ++i) {
        const auto& r = c.intervals[i];
        const std::string where = "interval N=" + std::to_string(r.N);
        if (r.N != i + 1) return reject(where + ": intervals are not consecutive from 1");
        if (r.X_hi != std::min(double(r.N + 1), c.X0)) return reject(where + ": wrong right end");
        const double M = derivative_bound(q, r.N);
        if (std::fabs(M - r.M) > budget || r.M < M - budget) return reject(where + ": derivative bound differs");
        if (r.steps.empty() || r.steps.front().eps != 0.0) return reject(where + ": does not start at eps = 0");
        const Terms terms = collect(table, r.N, q);
        const bool last = i + 1 == c.intervals.size();
        for (std::size_t k = 0; k < r.steps.size(); ++k) {
            const auto& s = r.steps[k];
            const auto t = interval_max_terms(terms, r.N, q, s.eps, r.X_hi);
            ++out.steps_checked;
            if (std::fabs(t.value - s.t) > budget) return reject(where + ": t_k differs at eps=" + format_real(s.eps));
            const bool final_step = k + 1 == r.steps.size();
            if (final_step && last && c.status != CertificateStatus::certified_nonpositive) break;
            if (!(s.t <= -10.0 * budget)) return reject(where + ": t_k too close to 0 at eps=" + format_real(s.eps));
            const double next = eps_step(s.eps, s.t, budget, r.M);
            if (final_step) {
                if (next < c.eps_max) return reject(where + ": stepping stops before eps_max");
            } else if (r.steps[k + 1].eps != next) {
                return reject(where + ": step rule violated at eps=" + format_real(s.eps));
            }
        }
    }
    if (c.status == CertificateStatus::certified_nonpositive) {
        if (double(c.intervals.back().N + 1) < c.X0) return reject("intervals stop before X0");
    } else {
        const auto& last = c.intervals.back().steps.back();
        if (last.eps != c.fail_eps || last.t != c.fail_value) return reject("failure record does not match");
        if (c.status == CertificateStatus::fail && !(c.fail_value >= 0.0)) return reject("FAIL value is negative");
    }
    return out;
}

SoundnessResult check_stepping(const ArithmeticTable& table, const DeltaCertificate& c, std::size_t samples,
                               std::uint64_t seed) {
    SoundnessResult out;
    out.worst_slack = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::size_t, std::size_t>> steps;
    for (std::size_t i = 0; i < c.intervals.size(); ++i)
        for (std::size_t k = 0; k < c.intervals[i].steps.size(); ++k)
            if (c.intervals[i].steps[k].t < 0.0) steps.push_back({i, k});
    if (steps.empty()) return out;
    const Modulus q = Modulus::from_value(c.q);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, steps.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n = 0; n < samples; ++n) {
        const auto [i, k] = steps[pick(rng)];
        const auto& r = c.intervals[i];
        const auto& s = r.steps[k];
        const double hi = std::min(c.eps_max, eps_step(s.eps, s.t, c.error_budget, r.M));
        const double e = s.eps + (hi - s.eps) * unit(rng);
        const double v = interval_max(table, r.N, q, e, r.X_hi).value;
        out.worst_slack = std::min(out.worst_slack, s.t + r.M * (e - s.eps) + c.error_budget - v);
        ++out.samples;
    }
    return out;
}

BoundReport cap_scan(const ArithmeticTable& table, const Modulus& q, double X_max, double cap, double eps_step) {
    if (!(X_max >= 1.0)) throw DomainError("cap_scan: X_max must be at least 1");
    if (!(eps_step > 0.0 && eps_step <= 1.0)) throw DomainError("cap_scan: eps step must lie in (0, 1]");
    const auto top = floor_cut(X_max);
    table.require(top);
    const auto steps = static_cast<std::uint64_t>(std::llround(1.0 / eps_step));
    BoundReport r;
    r.theorem_id = "delta_cap";
    r.q = q.value();
    r.bound = cap;
    bool first = true;
    double err = 0.0;
    for (std::uint64_t N = 1; N <= top; ++N) {
        const double X_hi = std::min(double(N + 1), X_max);
        const Terms terms = collect(table, N, q);
        for (std::uint64_t i = 0; i <= steps; ++i) {
            const double eps = std::min(1.0, double(i) * eps_step);
            const auto v = interval_max_terms(terms, N, q, eps, X_hi);
            err = std::max(err, v.error);
            if (first || v.value > r.lhs) {
                r.lhs = v.value;
                r.X = double(N);
                r.param = "eps=" + format_real(eps) + ";X_hi=" + format_real(X_hi);
                first = false;
            }
        }
    }
    r.margin = cap - r.lhs;
    r.error = err;
    r.verdict = verdict_from_margin(r.margin, err);
    r.param += ";X_max=" + format_real(X_max) + ";eps_step=" + format_real(eps_step);
    return r;
}

BoundReport certificate_report(const DeltaCertificate& c) {
    BoundReport r;
    r.theorem_id = "delta_sign";
    r.q = c.q;
    r.X = c.X0;
    r.bound = 0.0;
    r.error = c.error_budget;
    std::size_t steps = 0;
    bool first = true;
    for (const auto& rec : c.intervals)
        for (const auto& s : rec.steps) {
            ++steps;
            if (first || s.t > r.lhs) {
                r.lhs = s.t;
                first = false;
            }
        }
    r.margin = -r.lhs;
    r.param = "status=" + to_string(c.status) + ";eps_max=" + format_real(c.eps_max) + ";budget=" + format_real(c.error_budget) +
              ";intervals=" + std::to_string(c.intervals.size()) + ";steps=" + std::to_string(steps);
    if (c.status != CertificateStatus::certified_nonpositive)
        r.param += ";N=" + std::to_string(c.fail_N) + ";eps=" + format_real(c.fail_eps);
    switch (c.status) {
        case CertificateStatus::certified_nonpositive: r.verdict = Verdict::pass; break;
        case CertificateStatus::fail: r.verdict = Verdict::fail; break;
        case CertificateStatus::inconclusive: r.verdict = Verdict::inconclusive; break;
    }
    return r;
}

}  // namespace mobius
