#ifndef JUNTA_COMMON_HPP
#define JUNTA_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace junta {

// Error categories used across the library.  The CLI maps ParameterError to
// exit code 2 and CapacityError to exit code 3.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct GenerationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Qubits and Boolean variables are numbered 1..n.  Qubit 1 owns the most
// significant bit of a computational-basis index, so |q1 q2 ... qn> maps to
// the integer q1*2^(n-1) + ... + qn.
//
// A Subset is a bitmask over 1..n with bit (i-1) set when element i belongs
// to the set.  This keeps subset values independent of n; conversion to
// basis-index bit positions goes through index_bit().
using Subset = std::uint32_t;

inline constexpr int index_bit(int n, int i) { return n - i; }

inline constexpr bool contains(Subset s, int i) { return (s >> (i - 1)) & 1u; }

inline constexpr Subset full_set(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

inline constexpr Subset complement(Subset s, int n) { return full_set(n) & ~s; }

inline int set_size(Subset s) { return __builtin_popcount(s); }

inline std::vector<int> set_elements(Subset s) {
    std::vector<int> out;
    for (int i = 1; s != 0; ++i, s >>= 1)
        if (s & 1u) out.push_back(i);
    return out;
}

inline Subset subset_of(std::initializer_list<int> elems) {
    Subset s = 0;
    for (int i : elems) s |= 1u << (i - 1);
    return s;
}

// Translates a Subset into a mask over basis-index bits for a given n
// (element i lands on bit n-i).
inline std::uint32_t index_mask(Subset s, int n) {
    std::uint32_t m = 0;
    for (int i = 1; i <= n; ++i)
        if (contains(s, i)) m |= 1u << index_bit(n, i);
    return m;
}

inline std::string subset_to_string(Subset s) {
    std::string out = "{";
    bool first = true;
    for (int i : set_elements(s)) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

// Enumerates all size-r subsets of the sorted pool in lexicographic order of
// their element sequences and calls fn(Subset) on each.  Lexicographic order
// is what the argmin tie-breaking rules rely on.
template <typename Fn>
void for_each_combination(const std::vector<int>& pool, int r, Fn&& fn) {
    const int m = static_cast<int>(pool.size());
    if (r < 0 || r > m) return;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    while (true) {
        Subset s = 0;
        for (int i : idx) s |= 1u << (pool[i] - 1);
        fn(s);
        int p = r - 1;
        while (p >= 0 && idx[p] == m - r + p) --p;
        if (p < 0) break;
        ++idx[p];
        for (int q = p + 1; q < r; ++q) idx[q] = idx[q - 1] + 1;
    }
}

inline std::uint64_t binomial(int m, int r) {
    if (r < 0 || r > m) return 0;
    if (r > m - r) r = m - r;
    std::uint64_t acc = 1;
    for (int i = 1; i <= r; ++i) acc = acc * static_cast<std::uint64_t>(m - r + i) / i;
    return acc;
}

// Deterministic pseudorandom stream.  Identical seeds reproduce identical
// trial transcripts; every sampler and generator draws from one of these.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return engine_; }

    double uniform() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
    }
    std::uint64_t uniform_index(std::uint64_t bound) {  // in [0, bound)
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }
    double gaussian() {
        return std::normal_distribution<double>(0.0, 1.0)(engine_);
    }
    std::int64_t binomial_draw(std::int64_t trials, double p) {
        if (trials <= 0) return 0;
        if (p <= 0.0) return 0;
        if (p >= 1.0) return trials;
        return std::binomial_distribution<std::int64_t>(trials, p)(engine_);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace junta

#endif
