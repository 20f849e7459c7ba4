#include "packlab/exponent.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace packlab {

std::string to_string(FitMethod m) { return m == FitMethod::loglog_fit ? "loglog_fit" : "power_sum_bracket"; }

std::string to_string(TailTrend t) {
    switch (t) {
        case TailTrend::growing: return "growing";
        case TailTrend::shrinking: return "shrinking";
        case TailTrend::flat: return "flat";
        case TailTrend::insufficient: return "insufficient";
    }
    return "unknown";
}

double ExponentEstimate::constant() const { return std::exp(intercept); }

std::vector<double> default_grid(double lo, double hi, int steps_per_octave) {
    if (!(lo > 0) || !(hi >= lo)) throw ConfigError("grid needs 0 < lo <= hi");
    if (steps_per_octave < 1) throw ConfigError("steps_per_octave must be positive");
    std::vector<double> grid;
    for (int j = 0;; ++j) {
        double t = lo * std::exp2(static_cast<double>(j) / steps_per_octave);
        if (t >= hi * (1 - 1e-12)) break;
        grid.push_back(t);
    }
    grid.push_back(hi);
    return grid;
}

CountCurve counting_function(const std::vector<Rational>& curvatures, const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly increasing");
    std::vector<Rational> k = curvatures;
    for (const auto& x : k)
        if (x <= 0) throw ConfigError("counting_function expects positive curvatures, got " + x.get_str());
    std::sort(k.begin(), k.end());
    CountCurve c;
    for (double t : grid) {
        auto it = std::upper_bound(k.begin(), k.end(), t, [](double v, const Rational& q) { return cmp(q, v) > 0; });
        c.points.push_back({t, static_cast<std::uint64_t>(it - k.begin())});
    }
    return c;
}

ExponentEstimate fit_exponent(const CountCurve& curve, double decades, std::size_t min_points) {
    if (!(decades > 0)) throw ConfigError("window must span a positive number of decades");
    std::vector<CountPoint> pts;
    for (const auto& p : curve.points)
        if (p.N >= 1 && p.T > 0) pts.push_back(p);
    if (pts.empty()) throw PreconditionError("curve has no points with N >= 1");
    double hi = pts.back().T;
    double lo = hi / std::pow(10.0, decades);
    std::vector<CountPoint> window;
    for (const auto& p : pts)
        if (p.T >= lo * (1 - 1e-12)) window.push_back(p);
    if (window.size() < min_points)
        throw PreconditionError("too few points in the fit window: " + std::to_string(window.size()) + " < " +
                                std::to_string(min_points));
    if (curve.truncated && (!curve.reliable_up_to || *curve.reliable_up_to < hi))
        throw TruncationError("curve is truncated inside the fit window; refusing to estimate");

    double m = static_cast<double>(window.size());
    double sx = 0, sy = 0;
    for (const auto& p : window) {
        sx += std::log(p.T);
        sy += std::log(static_cast<double>(p.N));
    }
    double mx = sx / m, my = sy / m, sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : window) {
        double dx = std::log(p.T) - mx, dy = std::log(static_cast<double>(p.N)) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    ExponentEstimate e;
    e.delta_hat = sxy / sxx;
    e.intercept = my - e.delta_hat * mx;
    double sse = std::max(0.0, syy - e.delta_hat * sxy);
    e.stderr_ = window.size() > 2 ? std::sqrt(sse / (m - 2) / sxx) : 0.0;
    e.r_squared = syy > 0 ? 1 - sse / syy : 1.0;
    e.T_lo = window.front().T;
    e.T_hi = window.back().T;
    e.points_used = window.size();
    return e;
}

PowerSum power_sum(const std::vector<Rational>& values, double s, PowerSumBy by) {
    if (!(s > 0)) throw ConfigError("power_sum needs s > 0");
    // work with curvatures k; radius r = 1/k
    std::vector<double> k;
    for (const auto& v : values) {
        if (v <= 0) continue;
        k.push_back(by == PowerSumBy::curvature ? v.get_d() : 1.0 / v.get_d());
    }
    std::sort(k.begin(), k.end());
    PowerSum out;
    for (double x : k) out.value += std::pow(x, -s);
    if (k.size() < 2) return out;
    double top = k.back();
    for (double x : k) {
        if (x > top / 10)
            out.last_decade += std::pow(x, -s);
        else if (x > top / 100)
            out.previous_decade += std::pow(x, -s);
    }
    if (out.previous_decade <= 0 || k.front() > top / 100) return out;
    double ratio = out.last_decade / out.previous_decade;
    out.balance_exponent = s + std::log10(ratio);
    if (std::abs(ratio - 1) < 1e-9)
        out.trend = TailTrend::flat;
    else
        out.trend = ratio > 1 ? TailTrend::growing : TailTrend::shrinking;
    return out;
}

namespace {

std::string shortest(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string& s, std::size_t line) {
    double v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ConfigError("line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

}  // namespace

void write_curve_csv(std::ostream& out, const CountCurve& curve) {
    out << "# truncated=" << (curve.truncated ? "true" : "false") << "\n";
    if (curve.reliable_up_to) out << "# reliable_up_to=" << shortest(*curve.reliable_up_to) << "\n";
    if (curve.ambient_dimension) out << "# ambient_dimension=" << *curve.ambient_dimension << "\n";
    for (const auto& [k, v] : curve.source) out << "# " << k << "=" << v << "\n";
    out << "T,N\n";
    for (const auto& p : curve.points) out << shortest(p.T) << "," << p.N << "\n";
}

CountCurve read_curve_csv(std::istream& in) {
    CountCurve c;
    std::string line;
    std::size_t no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1), val = line.substr(eq + 1);
            key.erase(0, key.find_first_not_of(' '));
            if (key == "truncated")
                c.truncated = val == "true" || val == "1";
            else if (key == "reliable_up_to")
                c.reliable_up_to = parse_double(val, no);
            else if (key == "ambient_dimension")
                c.ambient_dimension = static_cast<int>(parse_double(val, no));
            else
                c.source[key] = val;
            continue;
        }
        if (!header) {
            if (line != "T,N") throw ConfigError("line " + std::to_string(no) + ": expected header 'T,N'");
            header = true;
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected 'T,N'");
        double t = parse_double(line.substr(0, comma), no);
        double n = parse_double(line.substr(comma + 1), no);
        if (n < 0 || n != std::floor(n)) throw ConfigError("line " + std::to_string(no) + ": N must be a nonnegative integer");
        if (!c.points.empty() && !(t > c.points.back().T))
            throw ConfigError("line " + std::to_string(no) + ": T values must increase");
        if (!c.points.empty() && static_cast<std::uint64_t>(n) < c.points.back().N)
            throw ConfigError("line " + std::to_string(no) + ": N must be nondecreasing");
        c.points.push_back({t, static_cast<std::uint64_t>(n)});
    }
    if (!header) throw ConfigError("missing 'T,N' header");
    return c;
}

}  // namespace packlab
