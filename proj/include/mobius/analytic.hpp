#pragma once

#include <string>
#include <vector>

#include "mobius/certified.hpp"
#include "mobius/estimate.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

/// C(s) = sum (-1)^{n+1}/n^s = (1 - 2^{1-s}) zeta(s), Re s > 0.
/// Cohen-Villegas-Zagier acceleration; the returned error covers the
/// truncation (Chebyshev bound) and rounding. Throws PrecisionError when
/// `tol` cannot be met.
ComplexEstimate eta(cplx s, double tol = 1e-13);

/// C'(s), by term-wise differentiation of the same accelerated sum. The
/// truncation error comes from a Cauchy estimate on a circle around s.
ComplexEstimate eta_prime(cplx s, double tol = 1e-13);

/// log |Gamma(x + iy)| for x > 0.
double log_abs_gamma(double x, double y);

/// s with its lower abscissa sigma0 and working tolerance. Construction
/// enforces sigma >= sigma0 > 0, tolerance > 0 and distance from
/// Z = {1 + 2 pi i k / log 2 : k != 0} above 10 * tolerance.
class ComplexParameter {
public:
    static ComplexParameter make(cplx s, double sigma0, double tolerance = 1e-12);

    cplx s() const { return s_; }
    double sigma() const { return s_.real(); }
    double sigma0() const { return sigma0_; }
    double tolerance() const { return tolerance_; }
    bool is_real() const { return s_.imag() == 0.0; }

private:
    ComplexParameter(cplx s, double sigma0, double tol) : s_(s), sigma0_(sigma0), tolerance_(tol) {}

    cplx s_;
    double sigma0_;
    double tolerance_;
};

/// zeta(s) = C(s) / (1 - 2^{1-s}). PoleError at s = 1.
ComplexEstimate zeta(const ComplexParameter& p);

/// zeta'(s) from C and C' by the quotient rule. PoleError at s = 1.
ComplexEstimate zeta_prime(const ComplexParameter& p);

/// Complex exp(z) - 1 without cancellation for small z.
cplx expm1(cplx z);

/// a(s) = 1 - 2^{1-s} and a'(s) = 2^{1-s} log 2.
cplx two_factor(cplx s);
cplx two_factor_prime(cplx s);

/// c(s) = (1 - 2^{1-s})/(s - 1), c(1) = log 2, and its derivative.
cplx c_factor(cplx s);
cplx c_factor_prime(cplx s);

/// e(s) = 2^{1-sigma} (1 + 2^{|s-1|-1} |s-1| log 2) log 2.
double e_factor(cplx s);

/// delta(Y, sigma0) = 1 + [log Y < 1/sigma0].
double delta_flag(double Y, double sigma0);

/// phi_s(q) = q^s prod_{p | q} (1 - p^{-s}).
cplx phi_s(const Modulus& q, cplx s);

/// q^s / phi_s(q) = prod_{p | q} (1 - p^{-s})^{-1}, computed from the
/// primes so it stays finite for large q.
cplx q_over_phi_s(const Modulus& q, cplx s);

/// sum_{p | q} log p / (p^s - 1).
cplx prime_log_sum(const Modulus& q, cplx s);

/// Values that are 0/0 or infinite at s = 1 in their textbook form,
/// rewritten through C, C', a, a', c so they stay finite there.
struct ZetaCombos {
    ComplexEstimate inv_zeta;          // 1/zeta(s) = a/C
    ComplexEstimate zeta_prime_ratio;  // zeta'(s)/zeta(s)^2 = (C' a - C a')/C^2
    ComplexEstimate inv_c_zeta;        // 1/(c(s) zeta(s)) = (s-1)/C
};
ZetaCombos zeta_combos(cplx s, double tol = 1e-12);

/// epsilon * zeta(1 + epsilon) = C(1+eps)/c(1+eps); equals 1 at eps = 0.
Estimate eps_zeta(double eps, double tol = 1e-12);

struct AnalyticConstants {
    cplx C, Cprime, c, cprime, K1, K2;
    double C_error = 0.0;
    double Cprime_error = 0.0;
    double e = 0.0;
    double Xi1 = 0.0;
    double Xi2 = 0.0;
    /// The last bracket of Xi2 as displayed in the theorem statement,
    /// kept for comparison with the form derived in the proof.
    double Xi2_display = 0.0;
    double delta = 1.0;  // delta(X/2, sigma0)
};

/// All named constants at (s, sigma0), with X entering Xi2 and delta.
/// Throws NearZeroError when |C(s)| does not exceed its error bound.
AnalyticConstants constants(const ComplexParameter& p, double X);

/// Partial sums of the alternating series and the error bounds for them.
cplx alternating_sum(double X, cplx s);
cplx alternating_log_sum(double X, cplx s);
/// (sigma + |s|)/(sigma X^sigma), or X^-sigma for real s.
double alternating_tail_bound(double X, cplx s);
/// (sigma + |s|)/(sigma^2 X^sigma), or 1/(e sigma X^sigma) for real s.
double alternating_log_tail_bound(double X, cplx s);

struct ChainCheck {
    std::string name;
    Verdict lower = Verdict::pass;
    Verdict upper = Verdict::pass;
    Estimate left, middle, right;
};

/// The six two-sided inequality chains around zeta(1 + eps), each side
/// compared with certified errors.
std::vector<ChainCheck> zeta_inequalities(double eps);

}  // namespace mobius
