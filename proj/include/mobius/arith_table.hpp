#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace mobius {

struct TableOptions {
    /// Largest limit accepted by build(). Each entry costs 10 bytes.
    std::uint64_t max_limit = 200'000'000;
    /// Entries per sieve segment.
    std::uint64_t segment_size = std::uint64_t{1} << 20;
};

/// Sieved values of mu, the Liouville function, the von Mangoldt function
/// and the Mertens prefix on 1..limit. Immutable once built, so a single
/// table can be shared across threads.
class ArithmeticTable {
public:
    /// Segmented sieve up to `limit`. Throws CapacityError when limit is 0
    /// or above options.max_limit.
    static ArithmeticTable build(std::uint64_t limit, const TableOptions& options = {});

    std::uint64_t limit() const { return limit_; }

    int mu(std::uint64_t n) const { return mu_[n]; }
    int liouville(std::uint64_t n) const { return liouville_[n]; }

    /// p when n = p^k (k >= 1), else 0.
    std::uint32_t prime_power_base(std::uint64_t n) const { return base_[n]; }

    /// Lambda(n): log p at prime powers, 0 elsewhere.
    double mangoldt(std::uint64_t n) const;

    /// M(n) = sum_{k <= n} mu(k); M(0) = 0.
    std::int64_t mertens(std::uint64_t n) const { return n == 0 ? 0 : mertens_[n]; }

    /// Raw mu values indexed 0..limit (index 0 holds 0).
    std::span<const std::int8_t> mu_values() const { return mu_; }

    /// Throws CapacityError naming the limit when n exceeds it.
    void require(std::uint64_t n) const;

private:
    ArithmeticTable() = default;

    std::uint64_t limit_ = 0;
    std::vector<std::int8_t> mu_;
    std::vector<std::int8_t> liouville_;
    std::vector<std::uint32_t> base_;
    std::vector<std::int32_t> mertens_;
};

/// Contents of an on-disk mu cache.
struct MuCache {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> mu;  // indexed 0..limit, mu[0] = 0
};

/// Binary cache layout (little endian):
///   bytes 0..7   magic "MOBIUSMU"
///   bytes 8..11  format version (1)
///   bytes 12..15 reserved (0)
///   bytes 16..23 limit
///   then ceil(limit / 4) bytes of 2-bit codes, n = 1 in the low bits of
///   the first byte: 0 -> 0, 1 -> +1, 2 -> -1.
void write_mu_cache(const ArithmeticTable& table, const std::filesystem::path& path);
MuCache read_mu_cache(const std::filesystem::path& path);

}  // namespace mobius
