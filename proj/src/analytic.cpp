#include "mobius/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mobius/error.hpp"
#include "mobius/summation.hpp"

namespace mobius {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kGamma = std::numbers::egamma;
constexpr double kUnit = 0x1p-53;
constexpr int kMaxTerms = 360;

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Estimate approx(double v, double ulps = 8.0) { return {v, std::fabs(v) * ulps * kUnit}; }

// Weights w_k = (d_n - d_k)/d_n of the Chebyshev acceleration, built from
// tail sums of positive terms so that no cancellation occurs.
struct ChebyshevWeights {
    std::vector<double> w;
    double dn = 1.0;
};

ChebyshevWeights chebyshev_weights(int n) {
    std::vector<double> term(n + 1);
    term[0] = 1.0;
    for (int i = 0; i < n; ++i)
        term[i + 1] = term[i] * (4.0 * (n + i) * (n - i)) / ((2.0 * i + 1.0) * (2.0 * i + 2.0));
    ChebyshevWeights out;
    out.w.resize(n);
    double tail = 0.0;
    for (int k = n - 1; k >= 0; --k) {
        tail += term[k + 1];
        out.w[k] = tail;
    }
    out.dn = tail + term[0];
    for (auto& x : out.w) x /= out.dn;
    return out;
}

// Gamma(x)/|Gamma(x+iy)|, slightly inflated to cover its own rounding.
double gamma_ratio(double x, double y) {
    return std::exp(std::lgamma(x) - log_abs_gamma(x, y)) * (1.0 + 1e-9);
}

int terms_for(double bound_numerator, double tol) {
    const double need = std::log(4.0 * bound_numerator / tol) / std::log(3.0 + std::sqrt(8.0));
    const int n = std::max(4, static_cast<int>(std::ceil(need)) + 1);
    if (n > kMaxTerms)
        throw PrecisionError("eta: tolerance " + sci(tol) + " needs more than " +
                             std::to_string(kMaxTerms) + " terms");
    return n;
}

cplx power_minus(double base, cplx s) {
    if (base == 1.0) return 1.0;
    const double L = std::log(base);
    const double mod = std::pow(base, -s.real());
    if (s.imag() == 0.0) return mod;
    const double ph = -s.imag() * L;
    return {mod * std::cos(ph), mod * std::sin(ph)};
}

ComplexEstimate accelerated(cplx s, double tol, bool derivative) {
    const double sigma = s.real();
    const double t = std::fabs(s.imag());
    if (!(sigma > 0.0)) throw DomainError("alternating zeta needs Re s > 0");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    double numerator;
    if (derivative) {
        const double r = std::min(sigma / 2.0, 1.0);
        numerator = gamma_ratio(sigma - r, t + r) / r;
    } else {
        numerator = gamma_ratio(sigma, t);
    }
    const int n = terms_for(numerator, tol);
    const auto ch = chebyshev_weights(n);
    ComplexCompensatedSum sum;
    for (int k = 0; k < n; ++k) {
        const double m = k + 1.0;
        cplx v = ch.w[k] * power_minus(m, s);
        if (derivative) v *= -std::log(m);
        sum += (k % 2) ? -v : v;
    }
    const double ulps = 3.0 * n + 10.0 + t * std::log(double(n));
    const double error = numerator / ch.dn + sum.error_bound(ulps);
    if (error > tol)
        throw PrecisionError("eta: achieved error " + sci(error) + " exceeds tolerance " + sci(tol));
    return {sum.value(), error};
}

double distance_to_Z(cplx s) {
    const double step = 2.0 * std::numbers::pi / kLog2;
    double k = std::round(s.imag() / step);
    if (k == 0.0) k = s.imag() >= 0 ? 1.0 : -1.0;
    double best = std::abs(s - cplx(1.0, k * step));
    best = std::min(best, std::abs(s - cplx(1.0, (k + 1 == 0 ? 2 : k + 1) * step)));
    best = std::min(best, std::abs(s - cplx(1.0, (k - 1 == 0 ? -2 : k - 1) * step)));
    return best;
}

void require_nonzero(const ComplexEstimate& C) {
    if (std::abs(C.value) <= 2.0 * C.error)
        throw NearZeroError("|C(s)| is below twice its evaluation error; s is too close to a zero of zeta");
}

}  // namespace

double log_abs_gamma(double x, double y) {
    if (!(x > 0.0)) throw DomainError("log_abs_gamma needs x > 0");
    double shift = 0.0;
    while (x < 10.0) {
        shift += 0.5 * std::log(x * x + y * y);
        x += 1.0;
    }
    const cplx w(x, y);
    const cplx w2 = w * w;
    const cplx series = 1.0 / (12.0 * w) - 1.0 / (360.0 * w * w2) + 1.0 / (1260.0 * w * w2 * w2) -
                        1.0 / (1680.0 * w * w2 * w2 * w2);
    const cplx L = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi) + series;
    return L.real() - shift;
}

ComplexEstimate eta(cplx s, double tol) { return accelerated(s, tol, false); }

ComplexEstimate eta_prime(cplx s, double tol) { return accelerated(s, tol, true); }

ComplexParameter ComplexParameter::make(cplx s, double sigma0, double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    if (!(sigma0 > 0.0)) throw DomainError("sigma0 must be positive");
    if (!(s.real() >= sigma0)) throw DomainError("Re s must be at least sigma0");
    if (distance_to_Z(s) <= 10.0 * tolerance)
        throw DomainError("s lies on the set where 1 - 2^{1-s} vanishes away from s = 1");
    return ComplexParameter(s, sigma0, tolerance);
}

cplx expm1(cplx z) {
    const double x = z.real();
    const double y = z.imag();
    const double em1 = std::expm1(x);
    const double h = std::sin(y / 2.0);
    return {em1 * std::cos(y) - 2.0 * h * h, std::exp(x) * std::sin(y)};
}

cplx two_factor(cplx s) { return -expm1((1.0 - s) * kLog2); }

cplx two_factor_prime(cplx s) { return std::exp((1.0 - s) * kLog2) * kLog2; }

cplx c_factor(cplx s) {
    const cplx d = s - 1.0;
    if (std::abs(d) < 0.5) {
        const cplx w = d * kLog2;
        cplx term = 1.0, sum = 1.0;
        for (int k = 1; k <= 30; ++k) {
            term *= -w / double(k + 1);
            sum += term;
        }
        return kLog2 * sum;
    }
    return two_factor(s) / d;
}

cplx c_factor_prime(cplx s) {
    const cplx d = s - 1.0;
    if (std::abs(d) < 0.5) {
        const cplx w = d * kLog2;
        // sum_{k>=1} k (-1)^k w^{k-1} / (k+1)!
        cplx power = 1.0, sum = 0.0;
        double fact = 1.0;
        for (int k = 1; k <= 30; ++k) {
            fact *= (k + 1);
            sum += (k % 2 ? -1.0 : 1.0) * double(k) * power / fact;
            power *= w;
        }
        return kLog2 * kLog2 * sum;
    }
    return (two_factor_prime(s) * d - two_factor(s)) / (d * d);
}

double e_factor(cplx s) {
    const double d = std::abs(s - 1.0);
    return std::pow(2.0, 1.0 - s.real()) * (1.0 + std::pow(2.0, d - 1.0) * d * kLog2) * kLog2;
}

double delta_flag(double Y, double sigma0) { return std::log(Y) < 1.0 / sigma0 ? 2.0 : 1.0; }

cplx phi_s(const Modulus& q, cplx s) {
    cplx v = std::exp(s * std::log(double(q.value())));
    for (auto p : q.primes()) v *= 1.0 - std::exp(-s * std::log(double(p)));
    return v;
}

cplx q_over_phi_s(const Modulus& q, cplx s) {
    cplx v = 1.0;
    for (auto p : q.primes()) v /= -expm1(-s * std::log(double(p)));
    return v;
}

cplx prime_log_sum(const Modulus& q, cplx s) {
    cplx v = 0.0;
    for (auto p : q.primes()) {
        const double L = std::log(double(p));
        v += L / expm1(s * L);
    }
    return v;
}

ComplexEstimate zeta(const ComplexParameter& p) {
    if (p.s() == cplx(1.0, 0.0)) throw PoleError("zeta has a pole at s = 1");
    const auto C = eta(p.s(), p.tolerance());
    const cplx a = two_factor(p.s());
    const cplx z = C.value / a;
    return {z, C.error / std::abs(a) + 8.0 * kUnit * std::abs(z)};
}

ComplexEstimate zeta_prime(const ComplexParameter& p) {
    if (p.s() == cplx(1.0, 0.0)) throw PoleError("zeta' has a pole at s = 1");
    const auto C = eta(p.s(), p.tolerance());
    const auto Cp = eta_prime(p.s(), p.tolerance());
    const cplx a = two_factor(p.s());
    const cplx ap = two_factor_prime(p.s());
    const cplx v = (Cp.value * a - C.value * ap) / (a * a);
    const double aa = std::abs(a);
    const double err = (Cp.error * aa + C.error * std::abs(ap)) / (aa * aa) + 16.0 * kUnit * std::abs(v);
    return {v, err};
}

ZetaCombos zeta_combos(cplx s, double tol) {
    const auto C = eta(s, tol);
    const auto Cp = eta_prime(s, tol);
    require_nonzero(C);
    const cplx a = two_factor(s);
    const cplx ap = two_factor_prime(s);
    const double mC = std::abs(C.value);
    const double low = mC - C.error;  // lower bound for |C|
    ZetaCombos out;

    const cplx inv = a / C.value;
    out.inv_zeta = {inv, std::abs(a) * C.error / (mC * low) + 8.0 * kUnit * std::abs(inv)};

    const cplx num = Cp.value * a - C.value * ap;
    const cplx ratio = num / (C.value * C.value);
    const double num_err = Cp.error * std::abs(a) + C.error * std::abs(ap);
    const double ratio_err = num_err / (low * low) +
                             std::abs(num) * (1.0 / (low * low) - 1.0 / (mC * mC)) +
                             16.0 * kUnit * (std::abs(Cp.value * a) + std::abs(C.value * ap)) / (mC * mC);
    out.zeta_prime_ratio = {ratio, ratio_err};

    const cplx ic = (s - 1.0) / C.value;
    out.inv_c_zeta = {ic, std::abs(s - 1.0) * C.error / (mC * low) + 8.0 * kUnit * std::abs(ic)};
    return out;
}

Estimate eps_zeta(double eps, double tol) {
    if (eps < 0.0) throw DomainError("eps_zeta needs eps >= 0");
    if (eps == 0.0) return {1.0, 0.0};
    const auto C = eta(1.0 + eps, tol);
    const double c = c_factor(1.0 + eps).real();
    const double v = C.value.real() / c;
    return {v, C.error / c + 8.0 * kUnit * v};
}

AnalyticConstants constants(const ComplexParameter& p, double X) {
    if (!(X >= 1.0)) throw DomainError("constants need X >= 1");
    const cplx s = p.s();
    const double sigma = p.sigma();
    const double s0 = p.sigma0();
    const auto C = eta(s, p.tolerance());
    const auto Cp = eta_prime(s, p.tolerance());
    require_nonzero(C);

    AnalyticConstants k;
    k.C = C.value;
    k.Cprime = Cp.value;
    k.C_error = C.error;
    k.Cprime_error = Cp.error;
    k.c = c_factor(s);
    k.cprime = c_factor_prime(s);
    k.e = e_factor(s);
    k.K1 = -(s - 1.0) / k.C;
    k.K2 = (k.C + (s - 1.0) * k.Cprime) / (k.C * k.C);

    const double mC = std::abs(k.C);
    const double d1 = std::abs(s - 1.0);
    const double core = (sigma + d1) * mC + sigma * d1 * std::abs(k.Cprime);
    k.Xi1 = p.is_real() ? core / (sigma * mC * mC)
                        : (sigma + std::abs(s)) * core / (sigma * sigma * mC * mC);

    const cplx a = two_factor(s);
    const cplx ap = two_factor_prime(s);
    const double z = std::pow(2.0, s0);
    const cplx inv_zeta = a / k.C;
    const cplx A = k.Cprime * a / (k.C * k.C) - k.c / k.C;
    const cplx B = (k.Cprime * a - k.C * ap) / (k.C * k.C);
    k.delta = delta_flag(X / 2.0, s0);
    const double head =
        z * (std::log(X) + k.delta * std::max(std::log(X / 2.0), 1.0 / s0)) * std::abs(inv_zeta) +
        z * kLog2 * d1 / mC + z * std::abs(A - B) + z * std::abs(A);
    k.Xi2 = head + z * k.e * std::abs(k.K2);
    k.Xi2_display = head + z * (k.e / mC) * std::abs(1.0 / k.C + (s - 1.0) * k.Cprime / k.C);
    return k;
}

cplx alternating_sum(double X, cplx s) {
    ComplexCompensatedSum sum;
    const auto N = static_cast<std::uint64_t>(std::floor(std::max(0.0, X)));
    for (std::uint64_t n = 1; n <= N; ++n) {
        const cplx v = power_minus(double(n), s);
        sum += (n % 2) ? v : -v;
    }
    return sum.value();
}

cplx alternating_log_sum(double X, cplx s) {
    ComplexCompensatedSum sum;
    const auto N = static_cast<std::uint64_t>(std::floor(std::max(0.0, X)));
    for (std::uint64_t n = 1; n <= N; ++n) {
        const cplx v = power_minus(double(n), s) * std::log(X / double(n));
        sum += (n % 2) ? v : -v;
    }
    return sum.value();
}

double alternating_tail_bound(double X, cplx s) {
    const double sigma = s.real();
    if (s.imag() == 0.0) return std::pow(X, -sigma);
    return (sigma + std::abs(s)) / (sigma * std::pow(X, sigma));
}

double alternating_log_tail_bound(double X, cplx s) {
    const double sigma = s.real();
    if (s.imag() == 0.0) return 1.0 / (std::numbers::e * sigma * std::pow(X, sigma));
    return (sigma + std::abs(s)) / (sigma * sigma * std::pow(X, sigma));
}

std::vector<ChainCheck> zeta_inequalities(double eps) {
    if (!(eps > 0.0)) throw DomainError("zeta_inequalities needs eps > 0");
    const double sigma = 1.0 + eps;
    const auto P = ComplexParameter::make(sigma, 1.0, 1e-13);
    const auto Z = zeta(P);
    const auto Zp = zeta_prime(P);
    const auto C = eta(sigma, 1e-13);
    const auto Cp = eta_prime(sigma, 1e-13);

    const double z = Z.value.real();
    const double zp = Zp.value.real();
    const double cv = C.value.real();
    const double cpv = Cp.value.real();
    const Estimate zeta_est{z, Z.error};
    const Estimate log_deriv{zp / z, Zp.error / z + std::fabs(zp) * Z.error / (z * (z - Z.error)) +
                                         4.0 * kUnit * std::fabs(zp / z)};
    const Estimate inv_C{1.0 / cv, C.error / (cv * (cv - C.error)) + 4.0 * kUnit / cv};
    const Estimate C_ratio{cpv / cv, Cp.error / cv + std::fabs(cpv) * C.error / (cv * (cv - C.error)) +
                                         4.0 * kUnit * std::fabs(cpv / cv)};
    const double c_small = -std::expm1(-eps * kLog2) / eps;
    const double two_eps = std::exp2(eps);

    std::vector<ChainCheck> out;
    auto chain = [&](std::string name, Estimate l, Estimate m, Estimate r, bool upper_strict) {
        ChainCheck c{std::move(name), certify_lt(l, m), upper_strict ? certify_lt(m, r) : certify_le(m, r),
                     l, m, r};
        out.push_back(c);
    };
    chain("zeta(1+eps) between 1/eps and exp(gamma eps)/eps", approx(1.0 / eps), zeta_est,
          approx(std::exp(kGamma * eps) / eps), false);
    chain("1/c(1+eps) between 1/log 2 and 2^eps/log 2", approx(1.0 / kLog2), approx(1.0 / c_small, 16),
          approx(two_eps / kLog2), true);
    chain("log 2/(2^eps - 1) between 1/eps - log 2 and 1/eps", approx(1.0 / eps - kLog2, 16),
          approx(kLog2 / std::expm1(eps * kLog2)), approx(1.0 / eps), true);
    chain("zeta'/zeta(1+eps) window", approx(-1.0 / eps + 0.5 / (sigma * sigma), 16), log_deriv,
          approx(-1.0 / eps + 2.0 - 1.0 / sigma, 16), true);
    const double lower_invC =
        eps < 1.0 / kLog2 ? (1.0 / kLog2 - eps) * std::pow(2.0 / std::exp(kGamma), eps) : 0.0;
    chain("1/C(1+eps) window", approx(lower_invC, 16), inv_C, approx(two_eps / kLog2), true);
    chain("C'/C(1+eps) window", approx(-kLog2 + 0.5 / (sigma * sigma), 16), C_ratio,
          approx(2.0 - 1.0 / sigma, 16), true);
    return out;
}

}  // namespace mobius
