#pragma once

#include <cstdint>
#include <vector>

#include "mobius/arith_table.hpp"
#include "mobius/estimate.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

/// floor(X) as an integer, 0 for X < 1. Throws DomainError for NaN or
/// negative X and CapacityError when floor(X) does not fit in 63 bits.
std::uint64_t floor_cut(double X);

/// m_q(X) = sum_{n <= X, (n,q)=1} mu(n)/n.
Estimate m_q(const ArithmeticTable& table, double X, const Modulus& q);

/// m_q(X; sigma) for real sigma.
Estimate m_q_sigma(const ArithmeticTable& table, double X, const Modulus& q, double sigma);

/// m_q(X; s) = sum_{n <= X, (n,q)=1} mu(n)/n^s. Takes the real path when
/// Im s = 0, so m_q_s(X, q, 1) and m_q(X, q) agree bit for bit.
ComplexEstimate m_q_s(const ArithmeticTable& table, double X, const Modulus& q, cplx s);

/// Log-weighted sum sum_{n <= X, (n,q)=1} mu(n) log(X/n)/n^s.
ComplexEstimate m_check_q_s(const ArithmeticTable& table, double X, const Modulus& q, cplx s);

Estimate m_check_q_sigma(const ArithmeticTable& table, double X, const Modulus& q, double sigma);

/// sum_{n <= X, (n,q)=1} mu(n) log^k(X/n)/n^sigma.
Estimate mobius_log_power_sum(const ArithmeticTable& table, double X, const Modulus& q,
                              int k, double sigma);

/// Integers l <= X all of whose prime factors divide q, ascending.
std::vector<std::uint64_t> q_inf_divisors(const Modulus& q, double X);

/// sum of 1/l over X/2 < l <= X with l | q^infinity.
double g1_window(const Modulus& q, double X);

/// psi(X) = sum_{n <= X} Lambda(n).
Estimate chebyshev_psi(const ArithmeticTable& table, double X);

}  // namespace mobius
