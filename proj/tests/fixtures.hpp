#pragma once

// Scene builders shared by the image / singularity / scene test files.

#include <memory>
#include <numbers>
#include <string>

#include "darboux/curve_frame.hpp"

namespace fixtures {

using namespace darboux;

inline constexpr double kPi = std::numbers::pi;

inline std::shared_ptr<const SurfacePatch> flat_patch() {
    return std::make_shared<const SurfacePatch>(
        parse_expr("0"), parse_expr("u1"), parse_expr("u2"), -2.2, 2.2, -2.2, 2.2);
}

inline std::shared_ptr<const SurfacePatch> hyperboloid_patch() {
    return std::make_shared<const SurfacePatch>(
        parse_expr("cosh(u1)"), parse_expr("sinh(u1)*cos(u2)"),
        parse_expr("sinh(u1)*sin(u2)"), 0.25, 2.0, -2.0 * kPi - 0.1, 0.1);
}

inline std::shared_ptr<const SurfacePatch> cylinder_patch() {
    return std::make_shared<const SurfacePatch>(
        parse_expr("sqrt(u1^2+1)"), parse_expr("u1"), parse_expr("u2"),
        0.0, 1.2, -0.1, 0.6);
}

inline std::shared_ptr<const SurfacePatch> cubic_patch(const std::string& f) {
    return std::make_shared<const SurfacePatch>(
        parse_expr(f), parse_expr("u1"), parse_expr("u2"), -0.36, 0.36, -0.02, 0.02);
}

inline CurveOnSurface unit_circle() {
    return {flat_patch(), parse_expr("cos(t)"), parse_expr("-sin(t)"), 0.0, 2.0 * kPi};
}

inline CurveOnSurface hyperbolic_circle() {
    return {hyperboloid_patch(), parse_expr("1"), parse_expr("-t"), 0.0, 2.0 * kPi};
}

inline CurveOnSurface cylinder_curve() {
    return {cylinder_patch(), parse_expr("t"), parse_expr("sqrt(t^2+1)-1"), 0.1, 1.0};
}

inline CurveOnSurface cubic_curve(const std::string& f) {
    return {cubic_patch(f), parse_expr("t"), parse_expr("0"), -0.35, 0.35};
}

// height functions of the graph scenes; coefficients (20,11,02,30,21,12,03)
inline std::string cubic_p1() { return "u1*u2 + u1^3"; }
inline std::string cubic_p2() { return "0.5*u1^2 + u1*u2 + u1^3"; }
inline std::string cubic_p3() {
    return "0.3*u1^2 + 0.8*u1*u2 + 0.4*u2^2 + 0.5*u1^3 + 0.7*u1^2*u2 "
           "+ 0.2*u1*u2^2 + 0.1*u2^3";
}
inline std::string cubic_q() {
    return "-0.2*u1^2 + 2*u1*u2 - 0.3*u2^2 + 0.4*u1^3 + 0.3*u1^2*u2 "
           "+ 0.1*u1*u2^2 + 0.1*u2^3";
}

}  // namespace fixtures
