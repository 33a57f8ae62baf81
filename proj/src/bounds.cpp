#include "mobius/bounds.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "mobius/error.hpp"
#include "mobius/format.hpp"
#include "mobius/summation.hpp"
#include "mobius/sums.hpp"

namespace mobius {

namespace {

constexpr double kUnit = 0x1p-53;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string kv(const char* key, double v) { return std::string(key) + "=" + format_real(v); }

BoundReport make_report(std::string id, double X, const Modulus& q, std::string param, double lhs, double bound,
                        double margin, double error) {
    BoundReport r;
    r.theorem_id = std::move(id);
    r.X = X;
    r.q = q.value();
    r.param = std::move(param);
    r.lhs = lhs;
    r.bound = bound;
    r.margin = margin;
    r.error = error;
    r.verdict = verdict_from_margin(margin, error);
    return r;
}

// 0 <= lhs <= bound, each side judged with its own error.
BoundReport two_sided(std::string id, double X, const Modulus& q, std::string param, double lhs, double lhs_err,
                      double bound, double bound_err) {
    BoundReport r = make_report(std::move(id), X, q, std::move(param), lhs, bound, std::min(lhs, bound - lhs),
                                lhs_err + bound_err);
    r.verdict = worst(verdict_from_margin(lhs, lhs_err), verdict_from_margin(bound - lhs, lhs_err + bound_err));
    return r;
}

// Keeps the report with the smallest margin and the worst verdict seen.
struct Worst {
    BoundReport row;
    bool seen = false;
    std::uint64_t points = 0, fails = 0, inconclusive = 0;
    Verdict verdict = Verdict::pass;

    void add(const BoundReport& r) {
        ++points;
        if (r.verdict == Verdict::fail) ++fails;
        if (r.verdict == Verdict::inconclusive) ++inconclusive;
        verdict = worst(verdict, r.verdict);
        if (!seen || r.margin < row.margin) row = r;
        seen = true;
    }

    BoundReport finish() const {
        BoundReport r = row;
        r.param += (r.param.empty() ? "" : ";") + std::string("points=") + std::to_string(points) +
                   ";fail=" + std::to_string(fails) + ";inconclusive=" + std::to_string(inconclusive);
        r.verdict = verdict;
        return r;
    }
};

void require_X(double X, double lo, const char* what) {
    if (!(X >= lo)) throw DomainError(std::string(what) + ": X must be at least " + format_real(lo));
}

}  // namespace

const std::vector<std::string>& bounds_theorem_ids() {
    static const std::vector<std::string> ids = {
        "easy",        "mqeps_lower", "mqeps",   "mqeps_floor",     "mcheckqeps", "mqdex",  "mcheckqdex",
        "special",     "integral_abs_mq",        "y0",              "update",     "m2_sqrt", "m2_log",
        "coprimality", "basemq"};
    return ids;
}

double xi_exponent() { return 1.0 - 1.0 / (12.0 * std::log(10.0)); }
double theta_exponent() { return 1.0 - 1.0 / (14.0 * std::log(10.0)); }

double g0(const Modulus& q) { return q.is_even() ? std::sqrt(3.0) * (std::sqrt(2.0) - 1.0) / 2.0 : 1.0; }

double g1(const Modulus& q) { return q.is_even() ? 1.4378 * (1.0 - std::pow(2.0, -xi_exponent())) : 1.0; }

double q_over_phi_real(const Modulus& q, double s) {
    if (s <= 0.0 && q.value() > 1)
        throw DomainError("q^s/phi_s(q) is infinite for s <= 0 and q = " + std::to_string(q.value()));
    return q_over_phi_s(q, s).real();
}

double easy_bound(double X, const Modulus& q, int k, double sigma) {
    const double L = std::log(X);
    const double constant = k == 1 ? 1.00303 : 1.0;
    return constant * q.totient_ratio() * (k + (sigma - 1.0) * L) * std::pow(L, k - 1);
}

BoundReport verify_easy(const ArithmeticTable& table, double X, const Modulus& q, int k, double sigma) {
    require_X(X, 1.0, "verify_easy");
    if (k < 1) throw DomainError("verify_easy: k must be at least 1");
    if (!(sigma >= 1.0)) throw DomainError("verify_easy: sigma must be at least 1");
    const auto lhs = mobius_log_power_sum(table, X, q, k, sigma);
    const double b = easy_bound(X, q, k, sigma);
    return two_sided("easy", X, q, "k=" + std::to_string(k) + ";" + kv("sigma", sigma), lhs.value, lhs.error, b,
                     8.0 * kUnit * b);
}

std::vector<BoundReport> easy_sweep(const ArithmeticTable& table, const Modulus& q, std::uint64_t X_max,
                                    const std::vector<int>& ks, const std::vector<double>& sigmas) {
    table.require(X_max);
    if (ks.empty() || sigmas.empty()) throw DomainError("easy_sweep: empty grid");
    const int kmax = *std::max_element(ks.begin(), ks.end());
    if (*std::min_element(ks.begin(), ks.end()) < 1) throw DomainError("easy_sweep: k must be at least 1");
    std::vector<BoundReport> out;
    for (double sigma : sigmas) {
        if (!(sigma >= 1.0)) throw DomainError("easy_sweep: sigma must be at least 1");
        std::vector<CompensatedSum> P(kmax + 1);  // P_i = sum a_n (-log n)^i
        std::vector<Worst> worst(ks.size());
        for (std::uint64_t X = 1; X <= X_max; ++X) {
            const int m = table.mu(X);
            if (m != 0 && q.coprime_to(X)) {
                const double a = (sigma == 1.0 ? 1.0 / double(X) : std::pow(double(X), -sigma)) * m;
                const double l = -std::log(double(X));
                double t = a;
                for (int i = 0; i <= kmax; ++i) {
                    P[i] += t;
                    t *= l;
                }
            }
            const double L = std::log(double(X));
            for (std::size_t ki = 0; ki < ks.size(); ++ki) {
                const int k = ks[ki];
                double value = 0.0, error = 0.0, Lj = 1.0;
                for (int j = 0; j <= k; ++j) {
                    const double c = binom(k, j) * Lj;
                    const auto& Pi = P[k - j];
                    value += c * Pi.value();
                    error += c * (Pi.error_bound(k - j + 3) + (j + 4) * kUnit * std::fabs(Pi.value()));
                    Lj *= L;
                }
                const double b = easy_bound(double(X), q, k, sigma);
                BoundReport r = two_sided("easy", double(X), q, "k=" + std::to_string(k) + ";" + kv("sigma", sigma),
                                          value, error, b, 8.0 * kUnit * b);
                if (r.verdict != Verdict::pass) r = verify_easy(table, double(X), q, k, sigma);
                worst[ki].add(r);
            }
        }
        for (auto& w : worst) out.push_back(w.finish());
    }
    return out;
}

DeltaValue delta_q(const ArithmeticTable& table, double X, const Modulus& q, double eps) {
    require_X(X, 1.0, "delta_q");
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("delta_q: eps must lie in [0, 1]");
    DeltaValue d;
    d.X = X;
    d.q = q.value();
    d.eps = eps;
    const auto N = floor_cut(X);
    table.require(N);
    if (eps == 0.0) {
        const auto cm = m_check_q_sigma(table, double(N), q, 1.0);
        const auto m = m_q(table, double(N), q);
        const double qphi = q.totient_ratio();
        const double lx = std::log(X / double(N));
        d.value = cm.value - qphi + m.value * lx;
        d.error = cm.error + m.error * lx + 4.0 * kUnit * (std::fabs(cm.value) + qphi + std::fabs(m.value * lx));
        return d;
    }
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double term = std::expm1(eps * std::log(X / double(n))) / (eps * double(n));
        sum += m > 0 ? term : -term;
    }
    const double scale = std::exp(-eps * std::log(X));
    const double first = scale * sum.value();
    const double K = q_over_phi_real(q, 1.0 + eps);
    const auto ez = eps_zeta(eps);
    const double second = K / ez.value;
    d.value = first - second;
    d.error = scale * sum.error_bound(6.0) + K * ez.error / (ez.value * ez.value) +
              8.0 * kUnit * (std::fabs(first) + std::fabs(second));
    return d;
}

double mqeps_bound(double X, const Modulus& q, double eps) {
    const double xi = xi_exponent();
    const double first = X >= 1e12 ? 0.03 * g1(q) * q_over_phi_real(q, xi) / std::log(X) : 0.0;
    const double p2 = std::pow(2.0, eps);
    const double second = (4.1 * g0(q) + (5.0 + eps * p2) / 2.0) * q_over_phi_real(q, 0.5) * p2 / std::sqrt(X);
    return first + second;
}

std::vector<BoundReport> verify_mqeps(const ArithmeticTable& table, double X, const Modulus& q, double eps) {
    require_X(X, 1.0, "verify_mqeps");
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("verify_mqeps: eps must lie in [0, 1]");
    const std::string param = kv("eps", eps);
    std::vector<BoundReport> out;

    // D = sum mu(n)/n expm1(eps log(X/n)), so that m_q(X; 1+eps) - m_q(X)/X^eps = X^-eps D,
    // and S = D/eps (the check m_q(X) sum at eps = 0).
    const auto N = floor_cut(X);
    table.require(N);
    CompensatedSum D, S;
    double slack_D = 0.0, slack_S = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double r = X / double(n);
        const double l = std::log(r);
        const double e = eps > 0.0 ? std::expm1(eps * l) : 0.0;
        const double d = e / double(n);
        const double t = (eps > 0.0 ? e / eps : l) / double(n);
        D += m > 0 ? d : -d;
        S += m > 0 ? t : -t;
        if (std::fma(r, double(n), -X) != 0.0) {
            // log(X/n) off by up to 2u in absolute terms
            const double g = 2.0 * kUnit * std::exp(eps * l) / double(n);
            slack_D += eps * g;
            slack_S += g;
        }
    }
    const double scale = std::exp(-eps * std::log(X));
    const auto mq = m_q(table, X, q);
    const auto mqs = m_q_sigma(table, X, q, 1.0 + eps);
    out.push_back(make_report("mqeps_lower", X, q, param, mq.value * scale, mqs.value, scale * D.value(),
                              scale * (D.error_bound(6.0) + slack_D)));

    const auto d = delta_q(table, X, q, eps);
    const double Xe = std::exp(eps * std::log(X));
    const double delta = d.value * Xe;
    const double b = mqeps_bound(X, q, eps);
    out.push_back(make_report("mqeps", X, q, param, std::fabs(delta), b, b - std::fabs(delta),
                              d.error * Xe + 4.0 * kUnit * (std::fabs(delta) + b)));

    // Delta/X^eps + q/phi(q) = X^-eps S + (q/phi(q) - K(1+eps)/(eps zeta(1+eps))), and the second
    // bracket is non-negative because eps zeta(1+eps) >= 1 and K decreases in eps. The verdict
    // rests on the first part; the reported margin includes both.
    const double floor_value = q.totient_ratio();
    const double analytic_slack =
        eps > 0.0 ? std::max(0.0, floor_value - q_over_phi_real(q, 1.0 + eps) / eps_zeta(eps).value) : 0.0;
    BoundReport fl = make_report("mqeps_floor", X, q, param, -d.value, floor_value, scale * S.value() + analytic_slack,
                                 scale * (S.error_bound(6.0) + slack_S));
    fl.verdict = verdict_from_margin(scale * S.value(), fl.error);
    out.push_back(fl);
    return out;
}

ComplexEstimate check_main_term(double X, const Modulus& q, cplx s) {
    const auto z = zeta_combos(s);
    const cplx K = q_over_phi_s(q, s);
    const cplx pls = prime_log_sum(q, s);
    const double L = std::log(X);
    const cplx inner = L * z.inv_zeta.value - z.zeta_prime_ratio.value - z.inv_zeta.value * pls;
    const double err = std::abs(K) * ((L + std::abs(pls)) * z.inv_zeta.error + z.zeta_prime_ratio.error) +
                       16.0 * kUnit * std::abs(K) *
                           (L * std::abs(z.inv_zeta.value) + std::abs(z.zeta_prime_ratio.value) +
                            std::abs(z.inv_zeta.value * pls));
    return {K * inner, err};
}

double mcheckqeps_bound(double X, const Modulus& q, double eps) {
    const double xi = xi_exponent();
    const double p2 = std::pow(2.0, eps);
    const double first = X >= 1e12 ? 0.0336 * g1(q) * p2 * q_over_phi_real(q, xi) / std::log(X) : 0.0;
    const double second = (4.86 * g0(q) + 2.93 + 2.83 * eps * std::log(X) + 5.17 * eps) * q_over_phi_real(q, 0.5) *
                          p2 / std::sqrt(X);
    return first + second;
}

BoundReport verify_mcheckqeps(const ArithmeticTable& table, double X, const Modulus& q, double eps) {
    require_X(X, 15.0, "verify_mcheckqeps");
    if (!(eps >= 0.0 && eps <= 0.1)) throw DomainError("verify_mcheckqeps: eps must lie in [0, 0.1]");
    const auto cm = m_check_q_sigma(table, X, q, 1.0 + eps);
    const auto main = check_main_term(X, q, 1.0 + eps);
    const double Xe = std::exp(eps * std::log(X));
    const double dcheck = Xe * (cm.value - main.value.real());
    const double b = mcheckqeps_bound(X, q, eps);
    return make_report("mcheckqeps", X, q, kv("eps", eps), std::fabs(dcheck), b, b - std::fabs(dcheck),
                       Xe * (cm.error + main.error) + 4.0 * kUnit * (std::fabs(dcheck) + b + Xe * std::fabs(cm.value)));
}

BoundReport verify_dex(const ArithmeticTable& table, double X, const Modulus& q, const ComplexParameter& p,
                       DexKind which) {
    require_X(X, 1.0, "verify_dex");
    const cplx s = p.s();
    const double sigma = p.sigma(), sigma0 = p.sigma0();
    if (q.value() > 1 && !(sigma0 < sigma))
        throw DomainError("verify_dex: phi_0(q) vanishes for q > 1, so sigma0 must be below Re s");
    const auto cst = constants(p, X);
    const auto I = integral_abs_mq(table, X, q);
    const double qfac = q_over_phi_real(q, sigma - sigma0);
    const double Xs = std::pow(X, -sigma), Xs0 = std::pow(X, -sigma0);
    const std::string param = "s=" + format_complex(s) + ";" + kv("sigma0", sigma0);
    // Relative slack for the analytic constants, which carry errors near the eta tolerance.
    const double rel = 1e-10;

    if (which == DexKind::mqdex) {
        const auto z = zeta_combos(s);
        const cplx K = q_over_phi_s(q, s);
        cplx value = -K * z.inv_zeta.value;
        double err = std::abs(K) * z.inv_zeta.error;
        if (s != cplx(1.0, 0.0)) {
            // At s = 1 the first two terms are the same sum and cancel exactly.
            const auto ms = m_q_s(table, X, q, s);
            const auto m = m_q(table, X, q);
            const cplx power = std::exp((1.0 - s) * std::log(X));
            value += ms.value - m.value * power;
            err += ms.error + m.error * std::abs(power) + 8.0 * kUnit * (std::abs(ms.value) + std::abs(m.value * power));
        }
        const double icz = std::abs(z.inv_c_zeta.value);
        const double factor = p.is_real() ? 1.0 : (sigma + std::abs(s)) / sigma;
        const double b = factor * icz * I.value.value * Xs + (std::abs(cst.c) + std::pow(2.0, sigma0) * cst.e) * icz *
                                                                 qfac * Xs0;
        const double berr = factor * icz * I.value.error * Xs + rel * b + z.inv_c_zeta.error * (b / std::max(icz, 1e-300));
        const double lhs = std::abs(value);
        return make_report("mqdex", X, q, param, lhs, b, b - lhs, err + berr);
    }
    const auto cm = m_check_q_s(table, X, q, s);
    const auto main = check_main_term(X, q, s);
    const double lhs = std::abs(cm.value - main.value);
    const double b = cst.Xi1 * I.value.value * Xs + cst.Xi2 * qfac * Xs0;
    const double err = cm.error + main.error + 8.0 * kUnit * (std::abs(cm.value) + std::abs(main.value)) +
                       cst.Xi1 * I.value.error * Xs + rel * b;
    return make_report("mcheckqdex", X, q, param, lhs, b, b - lhs, err);
}

double special_bound(double X, double sigma) {
    const double L = std::log(X);
    if (X <= 1e14) return (15.5 + 3.11 * (sigma - 1.0) * L) / std::exp((sigma - 0.5) * L);
    return 0.043 / (std::exp((sigma - 1.0) * L) * L);
}

BoundReport verify_special(const ArithmeticTable& table, double X, double sigma) {
    if (!(X >= 15.0 && X <= 1e14)) throw DomainError("verify_special: X must lie in [15, 1e14]");
    if (!(sigma >= 1.0 && sigma <= 1.04)) throw DomainError("verify_special: sigma must lie in [1, 1.04]");
    const Modulus one = Modulus::from_value(1);
    const auto cm = m_check_q_sigma(table, X, one, sigma);
    const auto main = check_main_term(X, one, sigma);
    const double lhs = std::fabs(cm.value - main.value.real());
    const double b = special_bound(X, sigma);
    return make_report("special", X, one, kv("sigma", sigma), lhs, b, b - lhs,
                       cm.error + main.error + 8.0 * kUnit * (std::fabs(cm.value) + b));
}

BoundReport special_sweep(const ArithmeticTable& table, double sigma, std::uint64_t X_lo, std::uint64_t X_hi) {
    if (X_lo < 15 || X_hi <= X_lo) throw DomainError("special_sweep: need 15 <= X_lo < X_hi");
    if (!(sigma >= 1.0 && sigma <= 1.04)) throw DomainError("special_sweep: sigma must lie in [1, 1.04]");
    table.require(X_hi);
    const auto z = zeta_combos(sigma);
    const double iz = z.inv_zeta.value.real(), zpr = z.zeta_prime_ratio.value.real();
    const double zerr = z.inv_zeta.error, zperr = z.zeta_prime_ratio.error;
    const Modulus one = Modulus::from_value(1);
    CompensatedSum A, B;  // sum mu(n)/n^sigma and sum mu(n) log n/n^sigma
    Worst worst;
    for (std::uint64_t N = 1; N < X_hi; ++N) {
        const int m = table.mu(N);
        if (m != 0) {
            const double w = sigma == 1.0 ? 1.0 / double(N) : std::pow(double(N), -sigma);
            A += m * w;
            B += m * w * std::log(double(N));
        }
        if (N < X_lo) continue;
        const double x0 = double(N), x1 = std::min(double(N + 1), double(X_hi));
        const double a = A.value() - iz, b0 = zpr - B.value();
        const double b = special_bound(x1, sigma);
        double lhs = 0.0, err = 0.0;
        for (double x : {x0, x1}) {
            const double L = std::log(x);
            const double v = std::fabs(a * L + b0);
            const double e = L * (A.error_bound(3.0) + zerr) + B.error_bound(4.0) + zperr +
                             8.0 * kUnit * (L * (std::fabs(A.value()) + std::fabs(iz)) + std::fabs(B.value()) +
                                            std::fabs(zpr));
            if (v > lhs) lhs = v;
            err = std::max(err, e);
        }
        worst.add(make_report("special", x0, one, kv("sigma", sigma) + ";interval=[" + std::to_string(N) + "," +
                                                      format_real(x1) + "]",
                              lhs, b, b - lhs, err + 8.0 * kUnit * b));
    }
    return worst.finish();
}

double integral_abs_mq_bound(double X, const Modulus& q) {
    const double xi = xi_exponent();
    const double first = X >= 1e12 ? 0.010333 * g1(q) * q_over_phi_real(q, xi) * X / std::log(X) : 0.0;
    return first + g0(q) * q_over_phi_real(q, 0.5) * std::sqrt(8.0 * X);
}

AbsIntegral integral_abs_mq(const ArithmeticTable& table, double X, const Modulus& q) {
    require_X(X, 1.0, "integral_abs_mq");
    const auto N = floor_cut(X);
    table.require(N);
    CompensatedSum m, total;
    double err = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int mu = table.mu(n);
        if (mu != 0 && q.coprime_to(n)) m += mu / double(n);
        const double width = std::min(double(n + 1), X) - double(n);
        if (width <= 0.0) continue;
        total += std::fabs(m.value()) * width;
        err += m.error_bound(1.0) * width;
    }
    return {{total.value(), err + total.error_bound(2.0)}, integral_abs_mq_bound(X, q)};
}

BoundReport verify_integral_abs_mq(const ArithmeticTable& table, double X, const Modulus& q) {
    const auto r = integral_abs_mq(table, X, q);
    return make_report("integral_abs_mq", X, q, "", r.value.value, r.bound, r.bound - r.value.value,
                       r.value.error + 4.0 * kUnit * r.bound);
}

double log_integral(double A, double y) {
    if (!(A > 1.0)) throw DomainError("log_integral: A must exceed 1");
    if (y == A) return 0.0;
    // t = e^u turns dt/log t into e^u du/u.
    auto f = [](double u) { return std::exp(u) / u; };
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(A), std::log(y), 15, 1e-13,
                                                                          &err);
}

double T_function(double A, double y) { return std::log(y) / y * log_integral(A, y); }

Y0Result solve_y0(double A) {
    if (!(A > std::exp(1.0))) throw DomainError("solve_y0: A must exceed e");
    auto F = [A](double y) { return (std::log(y) - 1.0) * log_integral(A, y) - y; };
    double lo = A * (1.0 + 1e-12), hi = 2.0 * A;
    int doublings = 0;
    while (F(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 1000 || !std::isfinite(hi)) throw BracketError("solve_y0: no sign change found");
    }
    if (F(lo) >= 0.0) throw BracketError("solve_y0: bracket does not start below the root");
    std::uintmax_t iters = 200;
    const auto r =
        boost::math::tools::toms748_solve(F, lo, hi, boost::math::tools::eps_tolerance<double>(48), iters);
    if (iters >= 200) throw BracketError("solve_y0: root search did not converge");
    Y0Result out;
    out.y0 = 0.5 * (r.first + r.second);
    const double L = std::log(out.y0);
    out.T_max = L / (L - 1.0);
    return out;
}

BoundReport verify_y0(double A) {
    const auto r = solve_y0(A);
    const Modulus one = Modulus::from_value(1);
    return make_report("y0", r.y0, one, kv("A", A), r.T_max, 1.03, 1.03 - r.T_max, 1e-9);
}

namespace {

struct SmallBound {
    const char* id;
    double value;
    int c2 = 0;  // when nonzero the bound is exactly sqrt(c2/X)
};

// |m_q(N)| <= sqrt(c2/X) decided in rational arithmetic, for ties that floating point cannot split.
Verdict exact_sqrt_check(const ArithmeticTable& table, const Modulus& q, std::uint64_t N, double X, int c2) {
    using boost::multiprecision::cpp_rational;
    cpp_rational m = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int mu = table.mu(n);
        if (mu != 0 && q.coprime_to(n)) m += cpp_rational(mu, static_cast<long long>(n));
    }
    // X is an integer here, so the comparison is exact.
    return m * m * cpp_rational(static_cast<long long>(X)) <= c2 ? Verdict::pass : Verdict::fail;
}

// Bounds applicable on the whole of [X_lo, X_hi] given q, evaluated at X.
std::vector<SmallBound> small_bounds_at(double X, double X_lo, double X_hi, const Modulus& q) {
    std::vector<SmallBound> out;
    const double L = std::log(X);
    if (q.value() == 1 && X_lo >= 617990.0) out.push_back({"update", (0.010032 * L - 0.0568) / (L * L)});
    if (q.kernel() == 2) {
        if (X_hi <= 1e12) out.push_back({"m2_sqrt", std::sqrt(3.0 / X), 3});
        if (X_lo >= 5379.0) out.push_back({"m2_log", 0.0296 / L});
    }
    const double half = q_over_phi_real(q, 0.5);
    // For q = 1 the two leading constants are sqrt(2); for q = 2, g0 makes the basemq constant sqrt(3).
    const int c2_cop = q.kernel() == 1 && X < 1e14 ? 2 : 0;
    const int c2_base = X < 1e12 ? (q.kernel() == 1 ? 2 : q.kernel() == 2 ? 3 : 0) : 0;
    out.push_back({"coprimality",
                   std::sqrt(2.0) * half / std::sqrt(X) +
                       (X >= 1e14 ? 0.010032 * q_over_phi_real(q, theta_exponent()) / L : 0.0),
                   c2_cop});
    out.push_back({"basemq",
                   g0(q) * half * std::sqrt(2.0) / std::sqrt(X) +
                       (X >= 1e12 ? 0.010032 * g1(q) * q_over_phi_real(q, xi_exponent()) / L : 0.0),
                   c2_base});
    return out;
}

}  // namespace

std::vector<BoundReport> small_m_bounds(const ArithmeticTable& table, double X, const Modulus& q) {
    if (!(X > 0.0)) throw DomainError("small_m_bounds: X must be positive");
    const auto m = m_q(table, X, q);
    std::vector<BoundReport> out;
    for (const auto& b : small_bounds_at(X, X, X, q)) {
        const double lhs = std::fabs(m.value);
        out.push_back(make_report(b.id, X, q, "", lhs, b.value, b.value - lhs, m.error + 4.0 * kUnit * b.value));
    }
    return out;
}

std::vector<BoundReport> small_m_sweep(const ArithmeticTable& table, const Modulus& q, std::uint64_t X_lo,
                                       std::uint64_t X_hi) {
    if (X_hi <= X_lo) throw DomainError("small_m_sweep: need X_lo < X_hi");
    table.require(X_hi);
    std::vector<std::string> order;
    std::vector<Worst> worst;
    CompensatedSum m;
    for (std::uint64_t N = 1; N < X_hi; ++N) {
        const int mu = table.mu(N);
        if (mu != 0 && q.coprime_to(N)) m += mu / double(N);
        if (N < X_lo) continue;
        const double lhs = std::fabs(m.value());
        const double err = m.error_bound(1.0);
        for (const auto& b : small_bounds_at(double(N + 1), double(N), double(N + 1), q)) {
            auto it = std::find(order.begin(), order.end(), b.id);
            if (it == order.end()) {
                order.push_back(b.id);
                worst.emplace_back();
                it = order.end() - 1;
            }
            auto r = make_report(b.id, double(N), q, "interval=[" + std::to_string(N) + "," + std::to_string(N + 1) + ")",
                                 lhs, b.value, b.value - lhs, err + 4.0 * kUnit * b.value);
            if (r.verdict == Verdict::inconclusive && b.c2 != 0 && N <= 100000)
                r.verdict = exact_sqrt_check(table, q, N, double(N + 1), b.c2);
            worst[it - order.begin()].add(r);
        }
    }
    std::vector<BoundReport> out;
    for (const auto& w : worst) out.push_back(w.finish());
    return out;
}

}  // namespace mobius
