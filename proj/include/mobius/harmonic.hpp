#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobius/arith_table.hpp"
#include "mobius/bounds.hpp"

namespace mobius {

inline constexpr double kEulerGamma = 0.577215664901532860606512090082;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281;
/// gamma_{0,1} = log(2 pi)/2, the constant of the Stirling formula for sum log n.
inline constexpr double kStirlingConstant = 0.918938533204672741780329736406;

const std::vector<std::string>& harmonic_theorem_ids();

/// alpha and beta on [k, k+1): with t = x - k,
///   beta(x) = (t - t^2)/x,  alpha(x) = (k(k+1) - x^2)/x^2,
/// alpha > 0 before k + t_k and < 0 after, t_k = sqrt(k^2+k) - k.
struct SawtoothPiece {
    std::uint64_t k = 0;
    double t_k = 0.0;
    double alpha(double x) const;
    double beta(double x) const;
};
SawtoothPiece sawtooth_piece(std::uint64_t k);

/// alpha(t) = (1 - 2{t})/t - ({t} - {t}^2)/t^2. DomainError for t <= 0.
double alpha(double t);
/// beta(t) = ({t} - {t}^2)/t, continuous with right derivative alpha.
double beta(double t);

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;  // 0 <= limit - value <= tail_bound
};
/// sum_{k<=K} (log(1+1/k) - 1/(k+1))/2, the integral of |alpha(x)| dx/x over the
/// negative parts of [1, K+1). Limit (1 - gamma)/2.
SeriesValue neg_alpha_integral(std::uint64_t K);
/// sum_{k<=K} (1/(2k) + 1/(2(k+1)) - log(1+1/k)), the integral of alpha(x) dx/x
/// over [1, K+1). Limit gamma - 1/2; the tail is 1/(6K) at most.
SeriesValue alpha_integral(std::uint64_t K);

/// eps_{0,1}(t) = sum_{n<=t} log n - (t log t - t + (1/2 - {t}) log t + log(2 pi)/2), t >= 1.
double stirling_eps(double t);
/// integral_1^X (1/2 - {t}) log t dt, X >= 1.
double sawtooth_log_integral(double X);
/// integral_0^X sum_{n<=t} log n dt through the integrated Stirling formula.
double integrated_stirling(double X);

/// integral_0^X psi(t) alpha(X/t) dt/t^2 = (1/X) sum_{n<=X} Lambda(n) beta(X/n).
Estimate psi_alpha_integral(const ArithmeticTable& table, double X);

/// f(X) with sum_{n<=X} Lambda(n)/n = log X + f(X).
double f_of(const ArithmeticTable& table, double X);
/// g(X) = log 3 - 3/2 + (1 - gamma) log 3/2 + 2 gamma_{0,1}/X + log X/(4 X^2).
double g_of(double X);
/// dg/dX = 1/(4X^3) - log(2 pi)/X^2 - log X/(2X^3).
double g_prime(double X);

enum class PhiChoice { psi, indicator };
struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};
/// Both sides of
///   int_0^X phi(t) dt/t^2 = (2/X^2) int_0^X S phi(t) dt - int_0^X phi(t) alpha(X/t) dt/t^2,
/// S phi(x) = sum_n phi(x/n), for phi = psi or phi = 1_{t >= 1}.
IdentityCheck integral_identity_check(const ArithmeticTable& table, double X, PhiChoice phi);

/// sum_{n<=N} Lambda(n)/n <= log N at every integer N <= X_max; the left side
/// only jumps at integers, so this covers all real X. Returns the worst row
/// followed by one row for each of 2, 3, 4, 5, 7, 8, 9, 11 within range.
std::vector<BoundReport> verify_harmonic(const ArithmeticTable& table, std::uint64_t X_max);

/// psi(N) <= N log 3 for every integer N <= X_max (worst row).
BoundReport verify_hanson(const ArithmeticTable& table, std::uint64_t X_max);

/// f(X) <= g(X) on [12, X_max]. g - f increases on each [N, N+1), so the
/// integers suffice. Worst row.
BoundReport verify_f_le_g(const ArithmeticTable& table, std::uint64_t X_max);

/// |eps_{0,1}(t)| <= 1/(8t) and |int_1^X (1/2-{t}) log t dt| <= log X/8 at the given points.
BoundReport verify_stirling_eps(const std::vector<double>& ts);
BoundReport verify_second_mean_value(const std::vector<double>& Xs);

/// The partial sum against (1 - gamma)/2, two-sided with its tail bound.
BoundReport verify_neg_alpha(std::uint64_t K, double tolerance);

/// Residual of the integral identity with phi = psi at every integer and
/// half-integer X <= X_max, against `tolerance`.
BoundReport verify_integral_identity(const ArithmeticTable& table, std::uint64_t X_max, double tolerance);

}  // namespace mobius
