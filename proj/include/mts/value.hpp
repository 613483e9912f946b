#pragma once

#include <limits>
#include <stdexcept>

namespace mts {

// Scores are plain ints. kInf is a *finite* sentinel for "no bound yet":
// it must survive +1/-1 (null-window construction) and f+ + f- (bisection
// midpoints) without overflow, hence a quarter of the int range away from
// the real limits. Real evaluations must stay strictly inside (-kInf, kInf).
using Value = int;

inline constexpr Value kInf = std::numeric_limits<Value>::max() / 2 - 1;

enum class Bound : unsigned char { Lower, Upper };

// Half-open is a lie here: (alpha, beta) is an *exclusive* interval in the
// fail-soft sense. alpha < beta always; a null window is beta == alpha + 1.
struct Window {
    Value alpha;
    Value beta;
};

inline void require(bool ok, const char* what) {
    if (!ok) throw std::logic_error(what);
}

}  // namespace mts
