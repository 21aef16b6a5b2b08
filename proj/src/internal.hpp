#pragma once

#include <cstdint>
#include <string>

#include "palcount/errors.hpp"

namespace palcount::detail {

using int128 = __int128;

inline int128 pow_int128_checked(std::int64_t base, int exp, const char* what) {
    int128 r = 1;
    constexpr int128 cap = int128(1) << 120;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > cap) throw guard_error(std::string(what) + ": power exceeds the exact integer range");
    }
    return r;
}

inline std::int64_t to_int64_checked(int128 v, const char* what) {
    if (v < 0 || v > int128(INT64_MAX))
        throw guard_error(std::string(what) + ": count exceeds the 64-bit range");
    return std::int64_t(v);
}

// exact division with divisibility assertion, for Mobius-sum closed forms
inline int128 div_exact(int128 num, int128 den, const char* what) {
    if (den == 0 || num % den != 0)
        throw integrality_error(std::string(what) + ": expected an exact division");
    return num / den;
}

}  // namespace palcount::detail
