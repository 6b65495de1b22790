#pragma once

#include <stdexcept>

namespace bmlab {

// Carrier of working precision, truncation orders and tolerances. Every
// numeric operation in the library is a pure function of (inputs, ctx);
// identical inputs and ctx give bit-identical results.
struct PrecisionContext {
    int digits = 40;        // significant decimal digits of the result
    int series_guard = 10;  // extra guard digits for internal series work
    int tail_order = 12;    // truncation order of asymptotic tail expansions

    PrecisionContext() = default;
    PrecisionContext(int d, int guard = 10, int tail = 12)
        : digits(d), series_guard(guard), tail_order(tail) {
        validate();
    }

    void validate() const {
        if (digits < 16) throw std::invalid_argument("PrecisionContext: digits must be >= 16");
        if (series_guard < 4) throw std::invalid_argument("PrecisionContext: series_guard must be >= 4");
        if (tail_order < 4) throw std::invalid_argument("PrecisionContext: tail_order must be >= 4");
    }

    int work_digits() const { return digits + series_guard; }

    // Binary working precision; ~3.33 bits per decimal digit plus headroom.
    long work_bits() const { return static_cast<long>(work_digits() * 3.3220 + 24); }

    PrecisionContext with_digits(int d) const { return PrecisionContext(d, series_guard, tail_order); }
    PrecisionContext bumped(int extra) const { return PrecisionContext(digits + extra, series_guard, tail_order); }
};

}  // namespace bmlab
