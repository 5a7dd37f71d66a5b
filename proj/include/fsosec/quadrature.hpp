#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace fsosec::quad {

struct Options
{
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

struct Result
{
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss-Legendre rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kronrod_nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kronrod_weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478584, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, ..., 9.
inline constexpr std::array<double, 5> gauss_weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment
{
    double lo, hi, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_21(F& f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[10];
    double gauss = 0.0;
    double abs_sum = std::abs(kronrod);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j)
    {
        const double dx = half * kronrod_nodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        const double pair = f1[j] + f2[j];
        kronrod += kronrod_weights[j] * pair;
        abs_sum += kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1)
            gauss += gauss_weights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kronrod_weights[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j)
        asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = kronrod * half;
    asc *= std::abs(half);
    abs_sum *= std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0)
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (abs_sum > std::numeric_limits<double>::min() / (50.0 * eps))
        error = std::max(50.0 * eps * abs_sum, error);
    return {lo, hi, value, error};
}

}  // namespace detail

/*!
 * Globally adaptive Gauss-Kronrod (21-point) integration over a partition.
 *
 * `breakpoints` must be sorted and hold at least two entries; the initial
 * segments are the gaps between them. The segment with the largest error
 * estimate is bisected until the summed estimate meets
 * max(abs_tol, rel_tol * |value|) or the interval budget is exhausted.
 */
template <class F>
Result integrate(F&& f, std::span<const double> breakpoints, const Options& opts = {})
{
    std::priority_queue<detail::Segment> heap;
    Result result;
    double value = 0.0, error = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            continue;
        auto seg = detail::gauss_kronrod_21(f, breakpoints[i], breakpoints[i + 1]);
        result.evaluations += 21;
        value += seg.value;
        error += seg.error;
        heap.push(seg);
    }
    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    while (!heap.empty() && error > tolerance()
           && static_cast<int>(heap.size()) < opts.max_intervals)
    {
        auto worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(worst.lo < mid && mid < worst.hi))
            break;
        heap.pop();
        auto left = detail::gauss_kronrod_21(f, worst.lo, mid);
        auto right = detail::gauss_kronrod_21(f, mid, worst.hi);
        result.evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift accumulated by incremental updates.
    value = 0.0;
    error = 0.0;
    while (!heap.empty())
    {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    result.value = value;
    result.abs_error = error;
    result.converged = error <= tolerance();
    return result;
}

template <class F>
Result integrate(F&& f, double lo, double hi, const Options& opts = {})
{
    if (hi < lo)
    {
        auto r = integrate(std::forward<F>(f), hi, lo, opts);
        r.value = -r.value;
        return r;
    }
    const std::array<double, 2> pts = {lo, hi};
    return integrate(std::forward<F>(f), std::span<const double>(pts), opts);
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int order);

/// Fixed composite Gauss-Legendre rule on the given panel boundaries.
template <class F>
double composite_gauss_legendre(F&& f, std::span<const double> panels, const GaussLegendreRule& rule)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < panels.size(); ++i)
    {
        const double center = 0.5 * (panels[i] + panels[i + 1]);
        const double half = 0.5 * (panels[i + 1] - panels[i]);
        double panel = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            panel += rule.weights[k] * f(center + half * rule.nodes[k]);
        total += panel * half;
    }
    return total;
}

}  // namespace fsosec::quad
