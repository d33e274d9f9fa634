#pragma once

#include <cmath>

namespace jhflow {

/// One evaluation of a velocity/pressure field.
struct FieldSample {
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
};

/// Interval of angles with optionally closed ends.
struct ThetaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = true;
    bool hi_open = true;

    [[nodiscard]] bool contains(double theta) const noexcept {
        const bool above = lo_open ? theta > lo : theta >= lo;
        const bool below = hi_open ? theta < hi : theta <= hi;
        return above && below;
    }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] double mid() const noexcept { return 0.5 * (lo + hi); }
};

}  // namespace jhflow
