#include "pcnres/zeta.hpp"

#include <cmath>

#include "pcnres/common.hpp"

namespace pcnres {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw Error("hurwitz_zeta: requires s > 1 and q > 0");

    // Direct terms until the Euler-Maclaurin tail is accurate, then the tail.
    constexpr double kShift = 16.0;
    double sum = 0.0;
    double a = q;
    while (a < kShift) {
        sum += std::pow(a, -s);
        a += 1.0;
    }

    // B_{2j} / (2j)!
    static constexpr double kBernoulliOverFactorial[] = {
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
        -691.0 / 1307674368000.0,
        1.0 / 74724249600.0,
        -3617.0 / 10670622842880000.0,
    };

    const double a_pow = std::pow(a, -s);
    double tail = a * a_pow / (s - 1.0) + 0.5 * a_pow;
    // Rising factorial s (s+1) ... (s+2j-2) times a^{-s-2j+1}.
    double rising = s;
    double power = a_pow / a;
    for (int j = 0; j < 8; ++j) {
        const double term = kBernoulliOverFactorial[j] * rising * power;
        tail += term;
        if (std::abs(term) < 1e-17 * std::abs(sum + tail)) break;
        rising *= (s + 2.0 * j + 1.0) * (s + 2.0 * j + 2.0);
        power /= a * a;
    }
    return sum + tail;
}

}  // namespace pcnres
