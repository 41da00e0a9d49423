// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The eeopa Authors
#include "eeopa/quadrature.hpp"
#include "eeopa/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace eeopa {

QuadResult &QuadResult::operator+=(const QuadResult &other)
{
    value += other.value;
    abs_error += other.abs_error;
    intervals += other.intervals;
    evaluations += other.evaluations;
    converged = converged && other.converged;
    return *this;
}

namespace {

// Kronrod abscissae and weights (21 points) with the embedded 10-point Gauss
// rule, as tabulated in QUADPACK.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977306614, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a;
    double b;
    double value;
    double error;

    bool operator<(const Segment &other) const { return error < other.error; }
};

Segment gauss_kronrod21(const Integrand &f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double uflow = std::numeric_limits<double>::min();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::fabs(half);

    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::fabs(resk);

    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::fabs(f1) + std::fabs(f2));
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[10] * std::fabs(fc - reskh);
    for (int j = 0; j < 10; ++j)
        resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    const double result = resk * half;
    resabs *= abs_half;
    resasc *= abs_half;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > uflow / (50.0 * eps))
        err = std::max(eps * 50.0 * resabs, err);
    if (!std::isfinite(result))
        err = std::numeric_limits<double>::infinity();
    return {a, b, result, err};
}

} // namespace

QuadResult integrate(const Integrand &f, double a, double b, const Tolerance &tol)
{
    QuadResult out;
    if (a == b)
        return out;

    std::priority_queue<Segment> heap;
    heap.push(gauss_kronrod21(f, a, b));
    out.evaluations = 21;
    double value = heap.top().value;
    double error = heap.top().error;

    auto accepted = [&] { return error <= std::max(tol.absolute, tol.relative * std::fabs(value)); };

    while (!accepted() && static_cast<int>(heap.size()) < tol.max_intervals) {
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // Interval can no longer be split in floating point.
        if (!(worst.a < mid && mid < worst.b))
            break;
        heap.pop();
        const Segment left = gauss_kronrod21(f, worst.a, mid);
        const Segment right = gauss_kronrod21(f, mid, worst.b);
        out.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the pieces to shed the running-update drift.
    value = 0.0;
    error = 0.0;
    out.intervals = static_cast<int>(heap.size());
    std::vector<Segment> pieces;
    pieces.reserve(heap.size());
    while (!heap.empty()) {
        pieces.push_back(heap.top());
        heap.pop();
    }
    std::sort(pieces.begin(), pieces.end(), [](const Segment &l, const Segment &r) { return l.a < r.a; });
    for (const auto &s : pieces) {
        value += s.value;
        error += s.error;
    }
    out.value = value;
    out.abs_error = error;
    out.converged = std::isfinite(value) && accepted();
    return out;
}

QuadResult integrate_checked(const Integrand &f, double a, double b, const Tolerance &tol,
                             const std::string &what)
{
    QuadResult r = integrate(f, a, b, tol);
    if (!r.converged) {
        std::ostringstream msg;
        msg << what << ": quadrature did not converge on [" << a << ", " << b << "] (estimate "
            << r.value << ", error " << r.abs_error << ", " << r.intervals << " intervals)";
        throw NumericError(msg.str(), r.value, r.abs_error, r.intervals);
    }
    return r;
}

QuadResult integrate_gain_axis(const Integrand &f, double lo, double hi, const Tolerance &tol,
                               std::span<const double> breakpoints)
{
    require(lo >= 0.0 && hi >= lo, "gain-axis integration needs 0 <= lo <= hi");
    QuadResult total;
    if (lo == hi)
        return total;

    constexpr double kFirstDecade = 1e-6;
    std::vector<double> cuts{lo, hi};
    if (lo < 1.0) {
        double start = lo;
        if (lo == 0.0) {
            start = kFirstDecade;
            for (double p : breakpoints)
                if (p > 0.0 && p < start)
                    start = p;
            if (start < hi)
                cuts.push_back(start);
        }
        for (double d = std::pow(10.0, std::ceil(std::log10(start))); d < std::min(hi, 1.0) + 0.5 * d; d *= 10.0)
            if (d > lo && d < hi)
                cuts.push_back(d);
    }
    for (double p : {2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0})
        if (p > lo && p < hi)
            cuts.push_back(p);
    for (double p : breakpoints)
        if (p > lo && p < hi)
            cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto g = [&f](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    auto piece = [&](std::size_t i, const Tolerance &t) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        if (a > 0.0 && b <= 1.0)
            return integrate(g, std::log(a), std::log(b), t);
        return integrate(f, a, b, t);
    };

    // A relative tolerance applies to the whole integral; each piece gets an
    // equal share of the resulting absolute budget, sized from a one-rule
    // estimate of the total.
    double budget = tol.absolute;
    if (tol.relative > 0.0) {
        Tolerance probe{std::numeric_limits<double>::infinity(), 0.0, 1};
        double scale = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            scale += piece(i, probe).value;
        budget = std::max(budget, tol.relative * std::fabs(scale));
    }
    Tolerance local = tol;
    local.absolute = budget / static_cast<double>(cuts.size() - 1);
    local.relative = 0.0;

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += piece(i, local);
    return total;
}

} // namespace eeopa
