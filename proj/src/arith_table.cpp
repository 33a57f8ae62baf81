#include "mobius/arith_table.hpp"

#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "mobius/error.hpp"
#include "mobius/modulus.hpp"

namespace mobius {

namespace {

constexpr std::array<char, 8> kMagic{'M', 'O', 'B', 'I', 'U', 'S', 'M', 'U'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

template <class T>
void put_le(std::ostream& os, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw Error("mu cache: truncated header");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= T(buf[i]) << (8 * i);
    return v;
}

}  // namespace

ArithmeticTable ArithmeticTable::build(std::uint64_t limit, const TableOptions& options) {
    if (limit == 0) throw CapacityError("sieve limit must be at least 1");
    if (limit > options.max_limit)
        throw CapacityError("sieve limit " + std::to_string(limit) + " exceeds the memory budget " +
                            std::to_string(options.max_limit));
    if (limit > 0xFFFFFFFFull) throw CapacityError("sieve limit must fit in 32 bits");

    ArithmeticTable t;
    t.limit_ = limit;
    t.mu_.assign(limit + 1, 0);
    t.liouville_.assign(limit + 1, 0);
    t.base_.assign(limit + 1, 0);
    t.mertens_.assign(limit + 1, 0);

    const auto small = primes_up_to(isqrt(limit));
    const std::uint64_t seg = options.segment_size;
    std::vector<std::uint64_t> rem(seg);
    std::vector<std::int8_t> mu(seg), parity(seg);
    std::vector<std::uint8_t> distinct(seg);
    std::vector<std::uint32_t> base(seg);

    for (std::uint64_t lo = 1; lo <= limit; lo += seg) {
        const std::uint64_t hi = std::min(limit + 1, lo + seg);
        const std::uint64_t len = hi - lo;
        for (std::uint64_t i = 0; i < len; ++i) {
            rem[i] = lo + i;
            mu[i] = 1;
            parity[i] = 1;
            distinct[i] = 0;
            base[i] = 0;
        }
        for (auto p : small) {
            if (p * p >= hi) break;
            std::uint64_t first = (lo + p - 1) / p * p;
            for (std::uint64_t n = first; n < hi; n += p) {
                const std::uint64_t i = n - lo;
                rem[i] /= p;
                mu[i] = static_cast<std::int8_t>(-mu[i]);
                parity[i] = static_cast<std::int8_t>(-parity[i]);
                ++distinct[i];
                base[i] = static_cast<std::uint32_t>(p);
                while (rem[i] % p == 0) {
                    rem[i] /= p;
                    mu[i] = 0;
                    parity[i] = static_cast<std::int8_t>(-parity[i]);
                }
            }
        }
        for (std::uint64_t i = 0; i < len; ++i) {
            const std::uint64_t n = lo + i;
            if (rem[i] > 1) {
                mu[i] = static_cast<std::int8_t>(-mu[i]);
                parity[i] = static_cast<std::int8_t>(-parity[i]);
                t.base_[n] = distinct[i] == 0 ? static_cast<std::uint32_t>(rem[i]) : 0;
            } else {
                t.base_[n] = distinct[i] == 1 ? base[i] : 0;
            }
            t.mu_[n] = mu[i];
            t.liouville_[n] = parity[i];
        }
    }

    std::int32_t running = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) {
        running += t.mu_[n];
        t.mertens_[n] = running;
    }
    return t;
}

double ArithmeticTable::mangoldt(std::uint64_t n) const {
    const auto p = base_[n];
    return p == 0 ? 0.0 : std::log(static_cast<double>(p));
}

void ArithmeticTable::require(std::uint64_t n) const {
    if (n > limit_)
        throw CapacityError("argument " + std::to_string(n) + " exceeds the sieve limit " +
                            std::to_string(limit_));
}

void write_mu_cache(const ArithmeticTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint32_t>(os, 0);
    put_le<std::uint64_t>(os, table.limit());

    std::vector<unsigned char> packed((table.limit() + 3) / 4, 0);
    for (std::uint64_t n = 1; n <= table.limit(); ++n) {
        const int m = table.mu(n);
        const unsigned code = m == 0 ? 0u : (m > 0 ? 1u : 2u);
        const std::uint64_t i = n - 1;
        packed[i / 4] |= static_cast<unsigned char>(code << (2 * (i % 4)));
    }
    os.write(reinterpret_cast<const char*>(packed.data()), static_cast<std::streamsize>(packed.size()));
    if (!os) throw Error("failed writing " + path.string());
}

MuCache read_mu_cache(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path.string());
    std::array<char, 8> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic)
        throw Error("mu cache: bad magic in " + path.string());
    const auto version = get_le<std::uint32_t>(is);
    if (version != kVersion) throw Error("mu cache: unsupported version " + std::to_string(version));
    get_le<std::uint32_t>(is);
    MuCache cache;
    cache.limit = get_le<std::uint64_t>(is);

    std::vector<unsigned char> packed((cache.limit + 3) / 4);
    if (!is.read(reinterpret_cast<char*>(packed.data()), static_cast<std::streamsize>(packed.size())))
        throw Error("mu cache: truncated body");
    cache.mu.assign(cache.limit + 1, 0);
    for (std::uint64_t n = 1; n <= cache.limit; ++n) {
        const std::uint64_t i = n - 1;
        const unsigned code = (packed[i / 4] >> (2 * (i % 4))) & 3u;
        if (code == 3) throw Error("mu cache: invalid code at n = " + std::to_string(n));
        cache.mu[n] = code == 0 ? 0 : (code == 1 ? 1 : -1);
    }
    return cache;
}

}  // namespace mobius
