#include "mobius/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/certified.hpp"
#include "mobius/error.hpp"
#include "mobius/format.hpp"
#include "mobius/summation.hpp"
#include "mobius/sums.hpp"

namespace mobius {

namespace {

constexpr double kUnit = 0x1p-53;
const double kLog3 = std::log(3.0);

BoundReport row(std::string id, double X, std::string param, double lhs, double bound, double error) {
    BoundReport r;
    r.theorem_id = std::move(id);
    r.X = X;
    r.q = 1;
    r.param = std::move(param);
    r.lhs = lhs;
    r.bound = bound;
    r.margin = bound - lhs;
    r.error = error;
    r.verdict = verdict_from_margin(r.margin, error);
    return r;
}

struct Worst {
    BoundReport r;
    bool any = false;
    std::size_t points = 0, fails = 0, inconclusive = 0;
    void add(const BoundReport& x) {
        ++points;
        if (x.verdict == Verdict::fail) ++fails;
        if (x.verdict == Verdict::inconclusive) ++inconclusive;
        if (!any || x.margin < r.margin) {
            const auto v = any ? worst(r.verdict, x.verdict) : x.verdict;
            r = x;
            r.verdict = v;
            any = true;
        } else {
            r.verdict = worst(r.verdict, x.verdict);
        }
    }
    BoundReport done(std::string extra = {}) {
        if (!any) throw DomainError("empty sweep");
        if (!r.param.empty()) r.param += ";";
        r.param += extra + "points=" + std::to_string(points) + ";fail=" + std::to_string(fails) +
                   ";inconclusive=" + std::to_string(inconclusive);
        return r;
    }
};

// integral_0^1 (1/2 - u) log(a + u) du = a(a+1) log(1+1/a)/2 - (2a+1)/4
//   = sum_{m>=1} (-1)^m / (2 (m+1)(m+2) a^m).
double sawtooth_piece_log(double a) {
    if (a < 4.0) return a * (a + 1.0) * std::log1p(1.0 / a) / 2.0 - (2.0 * a + 1.0) / 4.0;
    const double x = 1.0 / a;
    double term = 1.0, sum = 0.0;
    for (int m = 1; m < 60; ++m) {
        term *= -x;
        const double c = term / (2.0 * (m + 1) * (m + 2));
        sum += c;
        if (std::fabs(c) < 1e-20 * std::fabs(sum)) break;
    }
    return sum;
}

// integral_0^d (1/2 - u) log(N + u) du, 0 <= d < 1.
double sawtooth_partial_log(double N, double d) {
    if (d == 0.0) return 0.0;
    const double c = N + 0.5;
    auto F = [c](double v) { return c * (v * std::log(v) - v) - (v * v * std::log(v) / 2.0 - v * v / 4.0); };
    if (N < 16.0) return F(N + d) - F(N);
    // log N (d - d^2)/2 + integral_0^d (1/2 - u) log1p(u/N) du by series in u/N.
    double sum = std::log(N) * (d - d * d) / 2.0;
    const double r = d / N;
    double p = 1.0;  // r^j
    for (int j = 1; j < 60; ++j) {
        p *= r;
        // integral_0^d (1/2 - u) u^j du / N^j = N^-j (d^{j+1}/(2(j+1)) - d^{j+2}/(j+2))
        const double c = ((j % 2) ? 1.0 : -1.0) / j * p * (d / (2.0 * (j + 1)) - d * d / (j + 2));
        sum += c;
        if (std::fabs(c) < 1e-20) break;
    }
    return sum;
}

// Binet remainder of log N! for integer N.
double stirling_eps_integer(std::uint64_t N) {
    const double n = double(N);
    if (N < 10) {
        double s = 0.0;
        for (std::uint64_t k = 2; k <= N; ++k) s += std::log(double(k));
        const double l = std::log(n);
        return s - (n * l - n + l / 2.0 + kStirlingConstant);
    }
    const double x = 1.0 / n, x2 = x * x;
    return x * (1.0 / 12 - x2 * (1.0 / 360 - x2 * (1.0 / 1260 - x2 * (1.0 / 1680 - x2 / 1188))));
}

}  // namespace

const std::vector<std::string>& harmonic_theorem_ids() {
    static const std::vector<std::string> ids = {"harmonic",     "hanson",             "f_le_g",  "stirling_eps",
                                                 "second_mean_value", "neg_alpha", "integral_identity"};
    return ids;
}

double SawtoothPiece::alpha(double x) const {
    const double t = x - double(k);
    return (double(k) - t * (2.0 * double(k) + t)) / (x * x);
}

double SawtoothPiece::beta(double x) const {
    const double t = x - double(k);
    return (t - t * t) / x;
}

SawtoothPiece sawtooth_piece(std::uint64_t k) {
    SawtoothPiece p;
    p.k = k;
    const double kk = double(k);
    // sqrt(k^2+k) - k without cancellation
    p.t_k = kk / (std::sqrt(kk * kk + kk) + kk);
    return p;
}

double alpha(double t) {
    if (!(t > 0.0)) throw DomainError("alpha needs t > 0");
    return sawtooth_piece(static_cast<std::uint64_t>(std::floor(t))).alpha(t);
}

double beta(double t) {
    if (!(t > 0.0)) throw DomainError("beta needs t > 0");
    return sawtooth_piece(static_cast<std::uint64_t>(std::floor(t))).beta(t);
}

SeriesValue neg_alpha_integral(std::uint64_t K) {
    if (K < 1) throw DomainError("neg_alpha_integral needs K >= 1");
    CompensatedSum s;
    for (std::uint64_t k = 1; k <= K; ++k) s += (std::log1p(1.0 / double(k)) - 1.0 / double(k + 1)) / 2.0;
    // each term is at most 1/(4k(k+1))
    return {s.value(), 1.0 / (4.0 * double(K + 1))};
}

SeriesValue alpha_integral(std::uint64_t K) {
    if (K < 1) throw DomainError("alpha_integral needs K >= 1");
    CompensatedSum s;
    for (std::uint64_t k = 1; k <= K; ++k) {
        const double x = double(k);
        s += 0.5 / x + 0.5 / (x + 1.0) - std::log1p(1.0 / x);
    }
    return {s.value(), 1.0 / (6.0 * double(K))};
}

double stirling_eps(double t) {
    if (!(t >= 1.0)) throw DomainError("stirling_eps needs t >= 1");
    const auto N = static_cast<std::uint64_t>(std::floor(t));
    const double n = double(N), d = t - n;
    // eps(t) = eps(N) - integral_N^t (1/2 - {u}) du/u
    return stirling_eps_integer(N) - ((n + 0.5) * std::log1p(d / n) - d);
}

double sawtooth_log_integral(double X) {
    if (!(X >= 1.0)) throw DomainError("sawtooth_log_integral needs X >= 1");
    const auto N = static_cast<std::uint64_t>(std::floor(X));
    CompensatedSum s;
    for (std::uint64_t n = 1; n < N; ++n) s += sawtooth_piece_log(double(n));
    s += sawtooth_partial_log(double(N), X - double(N));
    return s.value();
}

double integrated_stirling(double X) {
    if (!(X >= 1.0)) throw DomainError("integrated_stirling needs X >= 1");
    const double frac = X - std::floor(X);
    return X * X / 2.0 * (std::log(X) - 1.5) + kStirlingConstant * X + sawtooth_log_integral(X) - 0.25 +
           X * stirling_eps(X) + (frac - frac * frac) / 2.0;
}

Estimate psi_alpha_integral(const ArithmeticTable& table, double X) {
    if (!(X >= 1.0)) throw DomainError("psi_alpha_integral needs X >= 1");
    const auto N = floor_cut(X);
    table.require(N);
    CompensatedSum s;
    for (std::uint64_t n = 2; n <= N; ++n) {
        const double L = table.mangoldt(n);
        if (L != 0.0) s += L * beta(X / double(n));
    }
    return {s.value() / X, (s.error_bound(8.0) + 2.0 * kUnit * std::fabs(s.value())) / X};
}

double f_of(const ArithmeticTable& table, double X) {
    if (!(X >= 1.0)) throw DomainError("f_of needs X >= 1");
    const auto N = floor_cut(X);
    table.require(N);
    CompensatedSum psi;
    for (std::uint64_t n = 2; n <= N; ++n) psi += table.mangoldt(n);
    const double frac = X - double(N);
    const double X2 = X * X;
    CompensatedSum f;
    f += psi.value() / X;
    f += -1.5;
    f += -psi_alpha_integral(table, X).value;
    f += 2.0 * kStirlingConstant / X;
    f += 2.0 * sawtooth_log_integral(X) / X2;
    f += -0.5 / X2;
    f += 2.0 * stirling_eps(X) / X;
    f += (frac - frac * frac) / X2;
    return f.value();
}

double g_of(double X) {
    if (!(X >= 1.0)) throw DomainError("g_of needs X >= 1");
    return kLog3 - 1.5 + (1.0 - kEulerGamma) * kLog3 / 2.0 + 2.0 * kStirlingConstant / X + std::log(X) / (4.0 * X * X);
}

double g_prime(double X) {
    if (!(X >= 1.0)) throw DomainError("g_prime needs X >= 1");
    return 1.0 / (4.0 * X * X * X) - kLog2Pi / (X * X) - std::log(X) / (2.0 * X * X * X);
}

IdentityCheck integral_identity_check(const ArithmeticTable& table, double X, PhiChoice phi) {
    if (!(X > 0.0)) throw DomainError("integral_identity_check needs X > 0");
    IdentityCheck c;
    if (X < 1.0) return c;  // both choices of phi vanish on (0, 1)
    const auto N = floor_cut(X);
    table.require(N);
    const double X2 = X * X;
    if (phi == PhiChoice::indicator) {
        // S phi(t) = [t]; the alpha term is (1/X) integral_1^X alpha = beta(X)/X.
        c.lhs = 1.0 - 1.0 / X;
        CompensatedSum s;
        for (std::uint64_t n = 1; n <= N; ++n) s += X - double(n);
        c.rhs = 2.0 / X2 * s.value() - beta(X) / X;
    } else {
        // lhs = sum Lambda(n)(1/n - 1/X); S psi(t) = sum_{n<=t} log n.
        CompensatedSum l, s;
        for (std::uint64_t n = 2; n <= N; ++n) {
            const double L = table.mangoldt(n);
            if (L != 0.0) l += L * (1.0 / double(n) - 1.0 / X);
            s += std::log(double(n)) * (X - double(n));
        }
        c.lhs = l.value();
        c.rhs = 2.0 / X2 * s.value() - psi_alpha_integral(table, X).value;
    }
    c.residual = c.lhs - c.rhs;
    return c;
}

std::vector<BoundReport> verify_harmonic(const ArithmeticTable& table, std::uint64_t X_max) {
    if (X_max < 1) throw DomainError("verify_harmonic needs X_max >= 1");
    table.require(X_max);
    static const std::uint64_t listed[] = {2, 3, 4, 5, 7, 8, 9, 11};
    std::vector<BoundReport> out;
    Worst w;
    CompensatedSum s;
    for (std::uint64_t N = 1; N <= X_max; ++N) {
        const double L = table.mangoldt(N);
        if (L != 0.0) s += L / double(N);
        const double logN = std::log(double(N));
        const double err = s.error_bound(4.0) + kUnit * logN;
        auto r = row("harmonic", double(N), "", s.value(), logN, err);
        w.add(r);
        if (std::find(std::begin(listed), std::end(listed), N) != std::end(listed)) {
            r.param = "listed";
            out.push_back(r);
        }
    }
    out.insert(out.begin(), w.done());
    return out;
}

BoundReport verify_hanson(const ArithmeticTable& table, std::uint64_t X_max) {
    if (X_max < 1) throw DomainError("verify_hanson needs X_max >= 1");
    table.require(X_max);
    Worst w;
    CompensatedSum psi;
    for (std::uint64_t N = 1; N <= X_max; ++N) {
        psi += table.mangoldt(N);
        const double b = double(N) * kLog3;
        w.add(row("hanson", double(N), "", psi.value(), b, psi.error_bound(2.0) + 2.0 * kUnit * b));
    }
    return w.done();
}

BoundReport verify_f_le_g(const ArithmeticTable& table, std::uint64_t X_max) {
    if (X_max < 12) throw DomainError("verify_f_le_g needs X_max >= 12");
    table.require(X_max);
    // f(N) = sum_{n<=N} Lambda(n)/n - log N, kept incrementally.
    Worst w;
    CompensatedSum s;
    for (std::uint64_t N = 1; N <= X_max; ++N) {
        const double L = table.mangoldt(N);
        if (L != 0.0) s += L / double(N);
        if (N < 12) continue;
        const double f = s.value() - std::log(double(N));
        const double g = g_of(double(N));
        w.add(row("f_le_g", double(N), "", f, g, s.error_bound(4.0) + 8.0 * kUnit * std::log(double(N))));
    }
    return w.done("g12=" + format_real(g_of(12.0)) + ";");
}

BoundReport verify_stirling_eps(const std::vector<double>& ts) {
    Worst w;
    for (double t : ts) {
        const double e = std::fabs(stirling_eps(t));
        w.add(row("stirling_eps", t, "", e, 1.0 / (8.0 * t), 1e-13));
    }
    return w.done();
}

BoundReport verify_second_mean_value(const std::vector<double>& Xs) {
    Worst w;
    for (double X : Xs) {
        const double v = std::fabs(sawtooth_log_integral(X));
        w.add(row("second_mean_value", X, "", v, std::log(X) / 8.0, 256.0 * kUnit * X * std::log(X)));
    }
    return w.done();
}

BoundReport verify_neg_alpha(std::uint64_t K, double tolerance) {
    const auto v = neg_alpha_integral(K);
    const double target = (1.0 - kEulerGamma) / 2.0;
    const double gap = target - v.value;
    const double err = 4.0 * kUnit * double(K) * 1e-6 + 4.0 * kUnit;
    const double bound = std::min(tolerance, v.tail_bound);
    auto r = row("neg_alpha", double(K), "K=" + std::to_string(K) + ";tail=" + format_real(v.tail_bound) +
                                             ";tolerance=" + format_real(tolerance),
                 gap, bound, err);
    // two-sided: 0 <= gap <= bound
    r.margin = std::min(gap, bound - gap);
    r.verdict = verdict_from_margin(r.margin, err);
    return r;
}

BoundReport verify_integral_identity(const ArithmeticTable& table, std::uint64_t X_max, double tolerance) {
    if (X_max < 1) throw DomainError("verify_integral_identity needs X_max >= 1");
    table.require(X_max);
    Worst w;
    // Prefix sums over n <= N: P = sum Lambda(n)/n, psi, A = sum log n, B = sum n log n.
    CompensatedSum P, psi, A, B;
    std::vector<std::uint64_t> pp;  // prime powers <= N
    for (std::uint64_t N = 1; N <= X_max; ++N) {
        const double L = table.mangoldt(N);
        if (L != 0.0) {
            P += L / double(N);
            psi += L;
            pp.push_back(N);
        }
        const double lg = std::log(double(N));
        A += lg;
        B += double(N) * lg;
        for (double X : {double(N), double(N) + 0.5}) {
            if (X > double(X_max)) break;
            const double lhs = P.value() - psi.value() / X;
            CompensatedSum T;
            for (auto n : pp) T += table.mangoldt(n) * beta(X / double(n));
            const double rhs = 2.0 / (X * X) * (X * A.value() - B.value()) - T.value() / X;
            const double res = std::fabs(lhs - rhs);
            const double err = 64.0 * kUnit * (std::fabs(lhs) + 2.0 * A.value() / X + 1.0);
            w.add(row("integral_identity", X, "phi=psi;tolerance=" + format_real(tolerance), res, tolerance, err));
        }
    }
    return w.done();
}

}  // namespace mobius
