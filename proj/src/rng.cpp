#include "pmfix/rng.hpp"

#include <utility>

#include "pmfix/errors.hpp"

namespace pmfix {

std::vector<long long> Rng::distinct_ints(int k, long long lo, long long hi) {
    std::vector<long long> pool;
    pool.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long v = lo; v <= hi; ++v) pool.push_back(v);
    if (static_cast<int>(pool.size()) < k) throw Error("distinct_ints: range too small");
    // Partial Fisher-Yates: the first k slots end up with the draw.
    for (int i = 0; i < k; ++i) {
        const auto j = i + static_cast<long long>(below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

}  // namespace pmfix
