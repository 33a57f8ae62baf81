#include "mobius/modulus.hpp"

#include <algorithm>
#include <string>

#include "mobius/error.hpp"

namespace mobius {

namespace {

constexpr std::uint64_t kTrialDivisionCap = 20'000'000;

}  // namespace

Modulus::Modulus(std::uint64_t q, std::vector<std::uint64_t> primes)
    : q_(q), primes_(std::move(primes)) {
    std::sort(primes_.begin(), primes_.end());
    primes_.erase(std::unique(primes_.begin(), primes_.end()), primes_.end());
    for (auto p : primes_) kernel_ *= p;
}

Modulus Modulus::from_value(std::uint64_t q) {
    if (q == 0) throw DomainError("modulus must be positive");
    std::vector<std::uint64_t> primes;
    std::uint64_t m = q;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (p > kTrialDivisionCap)
            throw DomainError("cannot factor q = " + std::to_string(q) +
                              " by trial division; pass its primes explicitly");
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);
    return Modulus(q, std::move(primes));
}

Modulus Modulus::from_primes(std::uint64_t q, std::vector<std::uint64_t> primes) {
    if (q == 0) throw DomainError("modulus must be positive");
    std::uint64_t m = q;
    for (auto p : primes) {
        if (p < 2 || q % p != 0)
            throw DomainError("prime " + std::to_string(p) + " does not divide q = " +
                              std::to_string(q));
        while (m % p == 0) m /= p;
    }
    if (m != 1)
        throw DomainError("prime list is incomplete for q = " + std::to_string(q));
    return Modulus(q, std::move(primes));
}

Modulus Modulus::squarefree(std::vector<std::uint64_t> primes) {
    std::uint64_t q = 1;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (auto p : primes) q *= p;
    return Modulus(q, std::move(primes));
}

bool Modulus::coprime_to(std::uint64_t n) const {
    for (auto p : primes_)
        if (n % p == 0) return false;
    return true;
}

double Modulus::totient_ratio() const {
    double r = 1.0;
    for (auto p : primes_) r *= double(p) / double(p - 1);
    return r;
}

std::uint64_t Modulus::totient() const {
    std::uint64_t t = q_;
    for (auto p : primes_) t = t / p * (p - 1);
    return t;
}

std::vector<std::uint8_t> coprime_mask(const Modulus& q, std::uint64_t limit) {
    std::vector<std::uint8_t> mask(limit + 1, 1);
    mask[0] = 0;
    for (auto p : q.primes())
        for (std::uint64_t n = p; n <= limit; n += p) mask[n] = 0;
    return mask;
}

std::vector<std::uint64_t> squarefree_divisors(std::span<const std::uint64_t> primes) {
    std::vector<std::uint64_t> out{1};
    for (auto p : primes) {
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
    std::vector<std::uint64_t> primes;
    if (bound < 2) return primes;
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t p = 2; p <= bound; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::uint64_t m = p * p; m <= bound; m += p) composite[m] = true;
    }
    return primes;
}

}  // namespace mobius
