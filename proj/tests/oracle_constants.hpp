#pragma once

// Reference values computed independently with mpmath at 40 digits.

namespace oracle {

inline constexpr double kCoth1 = 1.313035285499331303636;
inline constexpr double kCoth1_2 = 1.19953754419235076675;
inline constexpr double kCoth0_7 = 1.654621635802629404713;
inline constexpr double kCoth1Sq = 1.724061660966310466408;
inline constexpr double kOmega1 = 6.283185307179586476925;
inline constexpr double kOmega2 = 12.56637061435917295385;
inline constexpr double kOmega3 = 19.73920880217871723767;
inline constexpr double kAreaBallN3R1 = 17.35538738177143708766;  // w2 sinh^2 1
inline constexpr double kW1BallN3R1 = 5.785129127257145695888;
inline constexpr double kVolBallN2R1 = 3.412276265284902306448;   // 2pi(cosh1-1)
inline constexpr double kVolBallN3R1 = 5.11093270570828897693;    // pi(sinh2-2)
inline constexpr double kVolBallN3R1_5 = 22.04730431576295130583; // pi(sinh3-3)
inline constexpr double kVolBallN4R1 = 6.875719588241426690522;
inline constexpr double kIntH2BallN4R1 = 55.2356166730399186105;
inline constexpr double kThm13N3K2BallR1 = 29.92175799613061004151; // 4pi cosh^2 1
inline constexpr double kSqrt11Over3 = 1.91485421551267621995;
inline constexpr double kSinh1 = 1.175201193643801456882;
inline constexpr double kTanh1 = 0.7615941559557648881195;
inline constexpr double kIntH1BallN3R1 = 22.78823602577575090771;
inline constexpr double kW2BallN3R1 = 5.89243444002248731026;
inline constexpr double kLengthN2R0_7 = 4.76632196966405715514; // 2pi sinh 0.7
inline constexpr double kI5At0_08 = 4.386577276445188927896e-8;
inline constexpr double kI6At2_5 = 8013.430910622772511716;

} // namespace oracle
