#pragma once

#include <stdexcept>

namespace multifiber {

using Int = long long;

// Overflow-checked 64-bit arithmetic. Every lattice pairing and every count
// goes through these; silent wraparound would corrupt verdicts.
inline Int chk_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow (add)");
    return r;
}

inline Int chk_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow (sub)");
    return r;
}

inline Int chk_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow (mul)");
    return r;
}

} // namespace multifiber
