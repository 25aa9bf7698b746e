// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random stream derivation. Sequential builders (generator, densification,
// randomized strategies) use std::mt19937_64 seeded from a derived key.
// Replications use counter-based draws so that every link and every node has
// a fixed uniform per (master_seed, run_index), independent of the order in
// which a simulation happens to consume them.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace vaxsim {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t tag) noexcept
{
    return splitmix64(parent ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

// FNV-1a, used for string tags and content fingerprints.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xcbf29ce484222325ULL) noexcept
{
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_key(std::uint64_t parent, std::string_view tag) noexcept
{
    return derive_key(parent, fnv1a64(tag));
}

// 53-bit uniform in [0, 1).
constexpr double to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Minimal UniformRandomBitGenerator over the splitmix64 sequence. Cheap to
// construct, which matters for per-node streams.
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

inline std::mt19937_64 make_engine(std::uint64_t master_seed, std::string_view purpose)
{
    return std::mt19937_64(derive_key(master_seed, purpose));
}

/// Counter-based streams owned by one replication.
///
/// Two replications with the same (master_seed, run_index) see the same
/// uniform on every link and the same incubation draw on every node, whatever
/// the vaccinated set. Comparisons across strategies, rates and R values are
/// therefore paired.
class ReplicationStreams
{
public:
    ReplicationStreams(std::uint64_t master_seed, std::uint64_t run_index) noexcept
        : key_(derive_key(derive_key(master_seed, std::string_view{"replication"}), run_index))
    {
    }

    std::uint64_t key() const noexcept { return key_; }

    double link_uniform(std::uint64_t link_index) const noexcept
    {
        return to_unit(splitmix64(derive_key(key_ ^ kLinkSalt, link_index)));
    }

    SplitMix64 node_stream(std::uint64_t node) const noexcept
    {
        return SplitMix64(derive_key(key_ ^ kNodeSalt, node));
    }

    SplitMix64 seed_stream() const noexcept { return SplitMix64(derive_key(key_, kSeedSalt)); }

private:
    static constexpr std::uint64_t kLinkSalt = 0x6c696e6b5f753031ULL;
    static constexpr std::uint64_t kNodeSalt = 0x6e6f64655f696e63ULL;
    static constexpr std::uint64_t kSeedSalt = 0x736565645f6e6f64ULL;

    std::uint64_t key_;
};

} // namespace vaxsim
