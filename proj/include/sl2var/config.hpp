#pragma once

#include <cstdint>

namespace sl2var {

/// Global size limits. Everything in this library is exhaustive/exact, so
/// the limits exist to keep accidental big inputs from hanging a process.
struct Limits {
    int64_t max_field_size = 10'000;   // largest p^n accepted by Field::make
    int64_t max_enumeration = 59'049;  // largest group order that may be enumerated (3^10)
};

inline Limits& limits() {
    static Limits instance;
    return instance;
}

}  // namespace sl2var
