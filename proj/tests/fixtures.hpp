#pragma once

#include <vector>

#include "delpezzo/plane_geometry.hpp"

namespace fixtures {

using delpezzo::PlanePoint;
using delpezzo::PointConfig;
using delpezzo::Rat;

inline PlanePoint pt(long x, long y, long z) { return {Rat(x), Rat(y), Rat(z)}; }

// p1, p2, p3 on the line z = 0.
inline PointConfig collinear_config() {
    return PointConfig(4, {pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0), pt(0, 0, 1)});
}

// Six points (1 : t : t^2) on the conic xz = y^2.
inline PointConfig coconic_config() {
    std::vector<PlanePoint> p;
    for (long t = 0; t < 6; ++t) p.push_back(pt(1, t, t * t));
    return PointConfig(6, p);
}

// The node (0:0:1) of y^2 z = x^3 + x^2 z and seven further points
// (t^2 - 1 : t^3 - t : 1) of the same cubic.
inline PointConfig nodal_cubic_config() {
    std::vector<PlanePoint> p{pt(0, 0, 1)};
    for (long t : {2L, 3L, -4L, 5L, 7L, -9L, 11L}) p.push_back(pt(t * t - 1, t * t * t - t, 1));
    return PointConfig(8, p);
}

}  // namespace fixtures
