#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mobius {

/// A positive integer q stored with its distinct prime divisors.
///
/// Coprimality (n, q) = 1 only depends on the squarefree kernel, so every
/// query goes through the prime list.
class Modulus {
public:
    /// Factor q by trial division. Throws DomainError for q = 0 or when q
    /// has a prime factor too large to find quickly (pass the primes instead).
    static Modulus from_value(std::uint64_t q);

    /// Build from a known factorization. `primes` must be the distinct
    /// primes dividing q (any order).
    static Modulus from_primes(std::uint64_t q, std::vector<std::uint64_t> primes);

    /// Squarefree product of the given distinct primes.
    static Modulus squarefree(std::vector<std::uint64_t> primes);

    std::uint64_t value() const { return q_; }
    std::uint64_t kernel() const { return kernel_; }
    std::span<const std::uint64_t> primes() const { return primes_; }
    bool is_even() const { return !primes_.empty() && primes_.front() == 2; }

    bool coprime_to(std::uint64_t n) const;

    /// q / phi(q) = prod_{p | q} p / (p - 1).
    double totient_ratio() const;

    /// Euler's totient; exact when it fits in 64 bits.
    std::uint64_t totient() const;

private:
    Modulus(std::uint64_t q, std::vector<std::uint64_t> primes);

    std::uint64_t q_ = 1;
    std::uint64_t kernel_ = 1;
    std::vector<std::uint64_t> primes_;
};

/// Byte mask over 0..limit with mask[n] = 1 iff (n, q) = 1 (mask[0] = 0).
std::vector<std::uint8_t> coprime_mask(const Modulus& q, std::uint64_t limit);

/// All squarefree divisors of the product of `primes`, ascending.
std::vector<std::uint64_t> squarefree_divisors(std::span<const std::uint64_t> primes);

/// Primes p <= bound, ascending (simple sieve; intended for small bounds).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace mobius
