#include "cslnoise/special.hpp"

#include <array>
#include <cmath>

#include "cslnoise/constants.hpp"
#include "cslnoise/errors.hpp"

namespace csl::special {

namespace {

// Below this the power series is used, above it the large-x expansion.
// At 25 the optimally truncated asymptotic series is below 1e-20 relative.
constexpr double kSeriesLimit = 25.0;

double scaled_series(int order, double x) {
    const double half = 0.5 * x;
    const double q = half * half;
    double term = order == 0 ? 1.0 : half;  // (x/2)^n / n!
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * (k + order));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum * std::exp(-x);
}

double scaled_asymptotic(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) > std::abs(last)) break;  // series started to diverge
        sum += term;
        last = term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

double scaled(int order, double x) {
    if (!(x >= 0.0)) throw ValidationError("scaled Bessel argument must be >= 0", "x");
    if (std::isinf(x)) return 0.0;
    return x < kSeriesLimit ? scaled_series(order, x) : scaled_asymptotic(order, x);
}

// Taylor coefficients p_j of exp(-t) I_1(t) / t.
constexpr int kTaylorTerms = 40;

std::array<double, kTaylorTerms> transverse_taylor() {
    std::array<double, kTaylorTerms> bessel{};  // I_1(t)/t, even powers only
    double c = 0.5;
    for (int k = 0; 2 * k < kTaylorTerms; ++k) {
        bessel[2 * k] = c;
        c /= 4.0 * (k + 1) * (k + 2);
    }
    std::array<double, kTaylorTerms> expo{};
    double e = 1.0;
    for (int i = 0; i < kTaylorTerms; ++i) {
        expo[i] = e;
        e *= -1.0 / (i + 1);
    }
    std::array<double, kTaylorTerms> p{};
    for (int j = 0; j < kTaylorTerms; ++j) {
        for (int i = 0; i <= j; ++i) p[j] += bessel[j - i] * expo[i];
    }
    return p;
}

}  // namespace

double bessel_i0e(double x) { return scaled(0, x); }
double bessel_i1e(double x) { return scaled(1, x); }

double cylinder_transverse(double x) {
    if (!(x >= 0.0)) throw ValidationError("cylinder transverse argument must be >= 0", "x");
    if (x < 0.5) {
        // d/dx [exp(-x)(I0 + I1)] = -exp(-x) I1(x)/x, integrated termwise
        static const auto p = transverse_taylor();
        double power = x;
        double sum = 0.0;
        for (int j = 0; j < kTaylorTerms; ++j) {
            sum += p[j] * power / (j + 1);
            power *= x;
            if (std::abs(power) < 1e-18) break;
        }
        return sum;
    }
    return 1.0 - (bessel_i0e(x) + bessel_i1e(x));
}

}  // namespace csl::special
