#pragma once

#include "packlab/errors.hpp"
#include "packlab/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace packlab {

struct CountPoint {
    double T = 0;
    std::uint64_t N = 0;
};

struct CountCurve {
    std::vector<CountPoint> points;  // strictly increasing in T
    bool truncated = false;
    // Counts are exact for T up to this value even when truncated is set.
    std::optional<double> reliable_up_to;
    std::optional<int> ambient_dimension;
    std::map<std::string, std::string> source;
};

enum class FitMethod { loglog_fit, power_sum_bracket };
std::string to_string(FitMethod m);

struct ExponentEstimate {
    double delta_hat = 0;
    double stderr_ = 0;
    double r_squared = 0;
    double intercept = 0;  // log c in N(T) ~ c T^delta
    double T_lo = 0;
    double T_hi = 0;
    std::size_t points_used = 0;
    FitMethod method = FitMethod::loglog_fit;

    double constant() const;
};

// Grid T_j = lo * 2^(j/steps_per_octave), ending with hi itself.
std::vector<double> default_grid(double lo, double hi, int steps_per_octave = 4);

CountCurve counting_function(const std::vector<Rational>& curvatures, const std::vector<double>& grid);

// Least squares of log N against log T over the top `decades` decades of the curve.
ExponentEstimate fit_exponent(const CountCurve& curve, double decades = 2.0, std::size_t min_points = 8);

enum class PowerSumBy { radius, curvature };
enum class TailTrend { growing, shrinking, flat, insufficient };
std::string to_string(TailTrend t);

struct PowerSum {
    double value = 0;
    double last_decade = 0;
    double previous_decade = 0;
    TailTrend trend = TailTrend::insufficient;
    // s + log10(last/previous): the exponent at which the two decades would balance.
    std::optional<double> balance_exponent;
};

PowerSum power_sum(const std::vector<Rational>& values, double s, PowerSumBy by = PowerSumBy::curvature);

void write_curve_csv(std::ostream& out, const CountCurve& curve);
CountCurve read_curve_csv(std::istream& in);

}  // namespace packlab
