// Generated by tools/oracles/reference_triangle.py; do not edit.
#pragma once

namespace oracle {

inline constexpr double kElasticity[12][12] = {
    {5.0 / 2.0, 3.0 / 2.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0, -8.0 / 3.0, -2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, -2.0 / 3.0, -4.0 / 3.0},
    {3.0 / 2.0, 5.0 / 2.0, 1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, -4.0 / 3.0, -2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, -2.0 / 3.0, -8.0 / 3.0},
    {2.0 / 3.0, 1.0 / 3.0, 2.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, -1.0 / 3.0, -8.0 / 3.0, -4.0 / 3.0, 0.0 / 1.0, 4.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0},
    {1.0 / 6.0, 1.0 / 6.0, 0.0 / 1.0, 1.0 / 2.0, -1.0 / 6.0, 0.0 / 1.0, -2.0 / 3.0, -2.0 / 3.0, 2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0},
    {1.0 / 6.0, 1.0 / 6.0, 0.0 / 1.0, -1.0 / 6.0, 1.0 / 2.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 2.0 / 3.0, -2.0 / 3.0, -2.0 / 3.0},
    {1.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, 2.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 4.0 / 3.0, 0.0 / 1.0, -4.0 / 3.0, -8.0 / 3.0},
    {-8.0 / 3.0, -4.0 / 3.0, -8.0 / 3.0, -2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, 20.0 / 3.0, 2.0 / 1.0, -4.0 / 3.0, -2.0 / 1.0, 0.0 / 1.0, 2.0 / 1.0},
    {-2.0 / 3.0, -2.0 / 3.0, -4.0 / 3.0, -2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, 2.0 / 1.0, 20.0 / 3.0, -2.0 / 1.0, -16.0 / 3.0, 2.0 / 1.0, 0.0 / 1.0},
    {0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 2.0 / 3.0, 0.0 / 1.0, 4.0 / 3.0, -4.0 / 3.0, -2.0 / 1.0, 20.0 / 3.0, 2.0 / 1.0, -16.0 / 3.0, -2.0 / 1.0},
    {0.0 / 1.0, 0.0 / 1.0, 4.0 / 3.0, 0.0 / 1.0, 2.0 / 3.0, 0.0 / 1.0, -2.0 / 1.0, -16.0 / 3.0, 2.0 / 1.0, 20.0 / 3.0, -2.0 / 1.0, -4.0 / 3.0},
    {-2.0 / 3.0, -2.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, -2.0 / 3.0, -4.0 / 3.0, 0.0 / 1.0, 2.0 / 1.0, -16.0 / 3.0, -2.0 / 1.0, 20.0 / 3.0, 2.0 / 1.0},
    {-4.0 / 3.0, -8.0 / 3.0, 0.0 / 1.0, 0.0 / 1.0, -2.0 / 3.0, -8.0 / 3.0, 2.0 / 1.0, 0.0 / 1.0, -2.0 / 1.0, -4.0 / 3.0, 2.0 / 1.0, 20.0 / 3.0}};

inline constexpr double kDivergence[3][12] = {
    {-1.0 / 6.0, -1.0 / 6.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 1.0 / 6.0, -1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, -1.0 / 6.0, 1.0 / 6.0},
    {0.0 / 1.0, 0.0 / 1.0, 1.0 / 6.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, -1.0 / 6.0, -1.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0, -1.0 / 6.0, 0.0 / 1.0},
    {0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 0.0 / 1.0, 1.0 / 6.0, 0.0 / 1.0, -1.0 / 6.0, 1.0 / 3.0, 1.0 / 6.0, -1.0 / 3.0, -1.0 / 6.0}};

inline constexpr double kLaplacian[3][3] = {
    {1.0 / 1.0, -1.0 / 2.0, -1.0 / 2.0},
    {-1.0 / 2.0, 1.0 / 2.0, 0.0 / 1.0},
    {-1.0 / 2.0, 0.0 / 1.0, 1.0 / 2.0}};

}  // namespace oracle
