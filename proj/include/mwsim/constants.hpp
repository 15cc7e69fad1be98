#pragma once

namespace mwsim {

inline constexpr double kPi = 3.14159265358979323846;

/// Reduced Planck constant [J s], exact 2019 SI value.
inline constexpr double kHbarSI = 1.054571817e-34;

}  // namespace mwsim
