#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobius/analytic.hpp"
#include "mobius/arith_table.hpp"
#include "mobius/certified.hpp"
#include "mobius/estimate.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

/// One verification record. `param` holds the remaining coordinates of the
/// point as "key=value" pairs joined by ';'. margin is bound - lhs; for
/// two-sided claims it is the smaller of the two slacks.
struct BoundReport {
    std::string theorem_id;
    double X = 0.0;
    std::uint64_t q = 1;
    std::string param;
    double lhs = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double error = 0.0;
    Verdict verdict = Verdict::pass;
};

/// Theorem identifiers produced by this module, in a fixed order.
const std::vector<std::string>& bounds_theorem_ids();

/// xi = 1 - 1/(12 log 10) and theta = 1 - 1/(14 log 10).
double xi_exponent();
double theta_exponent();
/// g0(q) = sqrt(3)(sqrt(2)-1)/2 when q is even, else 1.
double g0(const Modulus& q);
/// g1(q) = 1.4378 (1 - 2^-xi) when q is even, else 1.
double g1(const Modulus& q);
/// q^s/phi_s(q) for real s; DomainError when phi_s(q) = 0.
double q_over_phi_real(const Modulus& q, double s);

/// 0 <= sum mu(n) log^k(X/n)/n^sigma <= 1.00303 (q/phi(q)) (k + (sigma-1) log X) log^{k-1} X,
/// coprime n only, with the constant 1 when k != 1.
BoundReport verify_easy(const ArithmeticTable& table, double X, const Modulus& q, int k, double sigma);
double easy_bound(double X, const Modulus& q, int k, double sigma);

/// The same claim at every integer X in [1, X_max], for each k and sigma,
/// computed from running prefix sums. Points whose fast verdict is not a
/// pass are re-evaluated directly. Returns one report per (k, sigma): the
/// point with the smallest margin, with the worst verdict seen.
std::vector<BoundReport> easy_sweep(const ArithmeticTable& table, const Modulus& q, std::uint64_t X_max,
                                    const std::vector<int>& ks, const std::vector<double>& sigmas);

struct DeltaValue {
    double X = 0.0;
    std::uint64_t q = 1;
    double eps = 0.0;
    double value = 0.0;  // Delta_q(X, eps)/X^eps
    double error = 0.0;
};
/// Delta_q(X, eps)/X^eps. For eps > 0 this is evaluated as
/// X^-eps sum mu(n)/n expm1(eps log(X/n))/eps - (q^{1+eps}/phi_{1+eps}(q))/(eps zeta(1+eps));
/// eps = 0 uses check m_q([X]) - q/phi(q) + m_q([X]) log(X/[X]).
DeltaValue delta_q(const ArithmeticTable& table, double X, const Modulus& q, double eps);

/// mqeps_lower: m_q(X)/X^eps <= m_q(X; 1+eps).
/// mqeps: |Delta_q(X, eps)| <= the displayed bound.
/// mqeps_floor: Delta_q(X, eps)/X^eps >= -q/phi(q).
std::vector<BoundReport> verify_mqeps(const ArithmeticTable& table, double X, const Modulus& q, double eps);
double mqeps_bound(double X, const Modulus& q, double eps);

/// |check Delta_q(X, eps)| against its bound; X >= 15 and eps in [0, 0.1].
BoundReport verify_mcheckqeps(const ArithmeticTable& table, double X, const Modulus& q, double eps);
double mcheckqeps_bound(double X, const Modulus& q, double eps);
/// q^s/phi_s(q) (log X/zeta(s) - zeta'(s)/zeta(s)^2 - (1/zeta(s)) sum_{p|q} log p/(p^s - 1)),
/// finite at s = 1.
ComplexEstimate check_main_term(double X, const Modulus& q, cplx s);

enum class DexKind { mqdex, mcheckqdex };
BoundReport verify_dex(const ArithmeticTable& table, double X, const Modulus& q, const ComplexParameter& p,
                       DexKind which);

/// |check m(X; sigma) - log X/zeta(sigma) + zeta'(sigma)/zeta(sigma)^2| against
/// (15.5 + 3.11 eps log X)/X^{sigma - 1/2}, X in [15, 1e14].
BoundReport verify_special(const ArithmeticTable& table, double X, double sigma);
/// Bound of the special estimate, including the X >= 1e14 branch.
double special_bound(double X, double sigma);
/// The special estimate for every real X in [X_lo, X_hi]: on [N, N+1) the
/// left side is |a log X + b| and the bound decreases, so both endpoints of
/// the left side are compared with the bound at the right end.
BoundReport special_sweep(const ArithmeticTable& table, double sigma, std::uint64_t X_lo, std::uint64_t X_hi);

struct AbsIntegral {
    Estimate value;  // integral_1^X |m_q(t)| dt
    double bound = 0.0;
};
AbsIntegral integral_abs_mq(const ArithmeticTable& table, double X, const Modulus& q);
double integral_abs_mq_bound(double X, const Modulus& q);
/// The integral against its lemma bound, as a report.
BoundReport verify_integral_abs_mq(const ArithmeticTable& table, double X, const Modulus& q);

struct Y0Result {
    double y0 = 0.0;
    double T_max = 0.0;
};
/// Root of y = (log y - 1) integral_A^y dt/log t. BracketError when no sign
/// change is found.
Y0Result solve_y0(double A);
/// T(y) = (log y / y) integral_A^y dt/log t.
double T_function(double A, double y);
/// integral_A^y dt/log t.
double log_integral(double A, double y);
/// T(y0(A)) against the cap 1.03; lhs is T_max and X holds y0.
BoundReport verify_y0(double A);

/// update (q = 1, X >= 617990), m2_sqrt and m2_log (q = 2), coprimality and
/// basemq (all q). Rows outside their ranges are omitted.
std::vector<BoundReport> small_m_bounds(const ArithmeticTable& table, double X, const Modulus& q);
/// The same bounds for every real X in [X_lo, X_hi). Each bound decreases in
/// X and m_q is constant on [N, N+1), so each interval is checked against the
/// bound at its right end. Returns the worst row per theorem id.
std::vector<BoundReport> small_m_sweep(const ArithmeticTable& table, const Modulus& q, std::uint64_t X_lo,
                                       std::uint64_t X_hi);

}  // namespace mobius
