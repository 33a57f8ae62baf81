#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mobius/arith_table.hpp"
#include "mobius/bounds.hpp"
#include "mobius/estimate.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

const std::vector<std::string>& delta_theorem_ids();

/// Uniform bound on |d/d eps (Delta_q(X, eps)/X^eps)| for X < N + 1 and
/// eps in [0, 1], from the two one-sided envelopes. The upper envelope is
/// increasing in eps; the lower one is bounded cell by cell on a grid of
/// `cells` pieces using the monotone factors (1+2e)/(1+e) and 1/(e zeta(1+e)).
double derivative_bound(const Modulus& q, std::uint64_t N, int cells = 1000);

/// sup of Delta_q(X, eps)/X^eps over N <= X < X_hi (X_hi <= N + 1), or the value at
/// X = N when X_hi == N. Evaluated as
///   sum mu(n)/n expm1(-eps log n)/eps + m_q(N) (1 - X^-eps)/eps - K(1+eps)/(eps zeta(1+eps)),
/// which is continuous down to eps = 0; the middle term is monotone in X, so the
/// supremum sits at an end chosen by the sign of m_q(N).
Estimate interval_max(const ArithmeticTable& table, std::uint64_t N, const Modulus& q, double eps, double X_hi);
Estimate interval_max(const ArithmeticTable& table, std::uint64_t N, const Modulus& q, double eps);

struct DeltaStep {
    double eps = 0.0;
    double t = 0.0;  // interval_max at eps
};

struct IntervalRecord {
    std::uint64_t N = 0;
    double X_hi = 0.0;
    double M = 0.0;
    std::vector<DeltaStep> steps;
};

enum class CertificateStatus { certified_nonpositive, fail, inconclusive };
std::string to_string(CertificateStatus s);

/// Covers [1, X0) x [0, eps_max]. Steps advance eps by -(t + error_budget)/M.
struct DeltaCertificate {
    std::uint64_t q = 1;
    double X0 = 0.0;
    double eps_max = 1.0;
    double error_budget = 1e-9;
    CertificateStatus status = CertificateStatus::certified_nonpositive;
    std::uint64_t fail_N = 0;
    double fail_eps = 0.0;
    double fail_value = 0.0;
    std::vector<IntervalRecord> intervals;
};

/// Runs the stepping loop on each [N, min(N+1, X0)). Stops at the first
/// interval where some t_k >= 0 (fail) or -10 * budget < t_k < 0, or where
/// the evaluation error exceeds the budget (inconclusive).
DeltaCertificate certify_sign(const ArithmeticTable& table, const Modulus& q, double X0,
                              double error_budget = 1e-9, double eps_max = 1.0);

nlohmann::json certificate_to_json(const DeltaCertificate& c);
DeltaCertificate certificate_from_json(const nlohmann::json& j);

struct ReplayResult {
    bool ok = true;
    std::size_t steps_checked = 0;
    std::string message;
};
/// Re-evaluates every M and t_k from the certificate alone and checks the
/// stepping rule, coverage of [1, X0) and termination at eps >= eps_max.
ReplayResult replay_certificate(const ArithmeticTable& table, const DeltaCertificate& c);

struct SoundnessResult {
    std::size_t samples = 0;
    double worst_slack = 0.0;  // min of t_k + M (e* - e_k) + budget - interval_max(e*)
};
/// Mean-value check at `samples` random eps* inside recorded steps.
SoundnessResult check_stepping(const ArithmeticTable& table, const DeltaCertificate& c, std::size_t samples,
                               std::uint64_t seed);

/// Dense scan of Delta_q(X, eps)/X^eps over X in [1, X_max] (closed) and
/// eps = 0, step, 2 step, ..., 1, against `cap`. The report's lhs is the
/// maximum found, X and param give where.
BoundReport cap_scan(const ArithmeticTable& table, const Modulus& q, double X_max, double cap, double eps_step = 1e-3);

/// Certificate run condensed into a report row: lhs is the largest t_k seen
/// (or the failing value), bound 0.
BoundReport certificate_report(const DeltaCertificate& c);

}  // namespace mobius
