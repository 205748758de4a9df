#pragma once

namespace redheffer {

// zeta(2) = pi^2/6 and zeta(3), 16 significant digits. Every analytic
// constant downstream (c_l, alpha) is built from these two literals so the
// whole artifact agrees with itself about what "zeta" means.
inline constexpr double kZeta2 = 1.644934066848226;
inline constexpr double kZeta3 = 1.202056903159594;

}  // namespace redheffer
