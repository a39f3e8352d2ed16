#pragma once

#include <array>
#include <cstdint>

namespace cubeph {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Stateless: the output is
/// a pure function of (counter, key), so any variable can be drawn directly
/// from its own coordinates without sharing generator state between workers.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter single_round(const Counter& c, const Key& k) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// Uniform variates for one (trial, model) pair, addressed by a 96-bit
/// variable id and a small draw index.
class CounterStream {
public:
    /// Key derivation mixes the master seed with the trial index.
    CounterStream(std::uint64_t master_seed, std::uint64_t trial, std::uint32_t model_tag)
        : tag_(model_tag) {
        const std::uint64_t k = splitmix64(master_seed ^ splitmix64(trial + 0x632be59bd9b4e019ull));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    /// Four raw 32-bit words for variable `id` (96 bits) and draw `draw`.
    Philox4x32::Counter raw(const std::array<std::uint32_t, 3>& id, std::uint32_t draw) const {
        return Philox4x32::generate({id[0], id[1], id[2], (tag_ << 24) ^ draw}, key_);
    }

    /// Two uniforms in [0,1) with 53 random bits each.
    std::array<double, 2> uniform2(const std::array<std::uint32_t, 3>& id, std::uint32_t draw) const {
        const auto w = raw(id, draw);
        return {to_unit(w[0], w[1]), to_unit(w[2], w[3])};
    }

    double uniform(const std::array<std::uint32_t, 3>& id, std::uint32_t draw) const {
        return uniform2(id, draw)[0];
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_{};
    std::uint32_t tag_;
};

}  // namespace cubeph
