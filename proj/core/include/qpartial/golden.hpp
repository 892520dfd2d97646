#pragma once
#include <cmath>
#include <utility>

namespace qpartial {

/// Golden-section search for the minimum of f on [lo, hi]. Shrinks the
/// bracket until it is narrower than tol and returns (argmin, f(argmin)).
/// The caller must supply a bracket containing a single minimum.
template <class F, class Float = long double>
std::pair<Float, Float> golden_section_minimize(F f, Float lo, Float hi, Float tol,
                                                int max_iter = 400) {
    const Float ratio = (std::sqrt(Float(5)) - 1) / 2;
    Float x1 = hi - ratio * (hi - lo);
    Float x2 = lo + ratio * (hi - lo);
    Float f1 = f(x1);
    Float f2 = f(x2);
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    const Float x = (lo + hi) / 2;
    return {x, f(x)};
}

}  // namespace qpartial
