#include "mobius/sums.hpp"

#include <algorithm>
#include <cmath>

#include "mobius/error.hpp"
#include "mobius/summation.hpp"

namespace mobius {

namespace {

constexpr double kUnit = 0x1p-53;

// True when X/n is computed without rounding, so log(X/n) only carries the
// rounding of the logarithm itself.
bool exact_ratio(double X, std::uint64_t n) { return std::fma(X / double(n), double(n), -X) == 0.0; }

std::uint64_t checked_cut(const ArithmeticTable& table, double X) {
    const auto N = floor_cut(X);
    table.require(N);
    return N;
}

}  // namespace

std::uint64_t floor_cut(double X) {
    if (std::isnan(X) || X < 0) throw DomainError("X must be a non-negative real");
    if (X < 1) return 0;
    if (X >= 0x1p63) throw CapacityError("X too large for an integer cut");
    return static_cast<std::uint64_t>(std::floor(X));
}

Estimate m_q(const ArithmeticTable& table, double X, const Modulus& q) {
    return m_q_sigma(table, X, q, 1.0);
}

Estimate m_q_sigma(const ArithmeticTable& table, double X, const Modulus& q, double sigma) {
    const auto N = checked_cut(table, X);
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double w = sigma == 1.0 ? 1.0 / double(n) : std::pow(double(n), -sigma);
        sum += m > 0 ? w : -w;
    }
    return {sum.value(), sum.error_bound(2.0)};
}

ComplexEstimate m_q_s(const ArithmeticTable& table, double X, const Modulus& q, cplx s) {
    if (s.imag() == 0.0) {
        const auto r = m_q_sigma(table, X, q, s.real());
        return {cplx(r.value, 0.0), r.error};
    }
    const auto N = checked_cut(table, X);
    ComplexCompensatedSum sum;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double L = std::log(double(n));
        const double mod = std::pow(double(n), -s.real());
        const double ph = -s.imag() * L;
        const cplx w(mod * std::cos(ph), mod * std::sin(ph));
        sum += m > 0 ? w : -w;
    }
    const double phase_ulps = 4.0 + std::abs(s.imag()) * std::log(std::max(1.0, X));
    return {sum.value(), sum.error_bound(phase_ulps)};
}

Estimate m_check_q_sigma(const ArithmeticTable& table, double X, const Modulus& q, double sigma) {
    const auto N = checked_cut(table, X);
    CompensatedSum sum;
    double weights = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double w = sigma == 1.0 ? 1.0 / double(n) : std::pow(double(n), -sigma);
        const double term = w * std::log(X / double(n));
        sum += m > 0 ? term : -term;
        if (!exact_ratio(X, n)) weights += w;
    }
    return {sum.value(), sum.error_bound(3.0) + 3.0 * kUnit * weights};
}

ComplexEstimate m_check_q_s(const ArithmeticTable& table, double X, const Modulus& q, cplx s) {
    if (s.imag() == 0.0) {
        const auto r = m_check_q_sigma(table, X, q, s.real());
        return {cplx(r.value, 0.0), r.error};
    }
    const auto N = checked_cut(table, X);
    ComplexCompensatedSum sum;
    double weights = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double L = std::log(double(n));
        const double mod = std::pow(double(n), -s.real());
        const double ph = -s.imag() * L;
        const double lw = std::log(X / double(n));
        const cplx w(mod * lw * std::cos(ph), mod * lw * std::sin(ph));
        sum += m > 0 ? w : -w;
        if (!exact_ratio(X, n)) weights += mod;
    }
    const double phase_ulps = 5.0 + std::abs(s.imag()) * std::log(std::max(1.0, X));
    return {sum.value(), sum.error_bound(phase_ulps) + 3.0 * kUnit * weights};
}

Estimate mobius_log_power_sum(const ArithmeticTable& table, double X, const Modulus& q, int k,
                              double sigma) {
    if (k < 0) throw DomainError("log power must be non-negative");
    const auto N = checked_cut(table, X);
    CompensatedSum sum;
    double weights = 0.0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int m = table.mu(n);
        if (m == 0 || !q.coprime_to(n)) continue;
        const double w = sigma == 1.0 ? 1.0 / double(n) : std::pow(double(n), -sigma);
        const double lw = std::log(X / double(n));
        const double term = w * std::pow(lw, k);
        sum += m > 0 ? term : -term;
        if (!exact_ratio(X, n)) weights += w * (k == 0 ? 0.0 : k * std::pow(lw, k - 1));
    }
    return {sum.value(), sum.error_bound(2.0 + k) + 3.0 * kUnit * weights};
}

std::vector<std::uint64_t> q_inf_divisors(const Modulus& q, double X) {
    if (std::isnan(X) || X < 1) throw DomainError("q_inf_divisors needs X >= 1");
    const std::uint64_t N = X >= 0x1p63 ? (std::uint64_t{1} << 63) : floor_cut(X);
    std::vector<std::uint64_t> out{1};
    for (auto p : q.primes()) {
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t v = out[i];
            while (v <= N / p) {
                v *= p;
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double g1_window(const Modulus& q, double X) {
    CompensatedSum sum;
    for (auto l : q_inf_divisors(q, X))
        if (2.0 * double(l) > X) sum += 1.0 / double(l);
    return sum.value();
}

Estimate chebyshev_psi(const ArithmeticTable& table, double X) {
    const auto N = checked_cut(table, X);
    CompensatedSum sum;
    for (std::uint64_t n = 2; n <= N; ++n) {
        const double v = table.mangoldt(n);
        if (v != 0.0) sum += v;
    }
    return {sum.value(), sum.error_bound(1.0)};
}

}  // namespace mobius
