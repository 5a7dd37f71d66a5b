#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "fsosec/error.hpp"
#include "fsosec/specfun.hpp"
#include "generators.hpp"
#include "oracle_values.hpp"

using namespace fsosec;
using namespace fsosec::specfun;
using testgen::rel_err;
using big = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("log_gamma known values")
{
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
    CHECK(rel_err(log_gamma(0.5), oracle::lgamma_0p5) < 1e-14);
    CHECK(rel_err(log_gamma(10.0), std::log(362880.0)) < 1e-14);
}

TEST_CASE("log_gamma relative accuracy over [1e-3, 1e6]")
{
    testgen::Gen g(11);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i)
    {
        const double x = g.log_uniform(1e-3, 1e6);
        const double want = static_cast<double>(boost::multiprecision::lgamma(big(x)));
        // Near the zeros at 1 and 2 the relative measure is meaningless; use the scale of the terms.
        const double scale = std::max(std::abs(want), std::abs(x - 1.0) * std::abs(x - 2.0) > 1e-2 ? 0.0 : 1.0);
        const double err = std::abs(log_gamma(x) - want) / std::max(std::abs(want), scale);
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("log_gamma near its zeros keeps absolute accuracy")
{
    for (double x : {0.9, 0.99, 0.999999, 1.000001, 1.1, 1.9, 1.99, 2.0000001, 2.2})
    {
        const double want = static_cast<double>(boost::multiprecision::lgamma(big(x)));
        CHECK(std::abs(log_gamma(x) - want) <= 1e-15 * (1.0 + std::abs(want)) + 1e-13 * std::abs(want));
    }
}

TEST_CASE("log_gamma rejects non-positive arguments")
{
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
    CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("complex log_gamma reduces to the real one on the axis")
{
    for (double x : {0.25, 0.5, 1.5, 3.0, 17.5, 120.0})
        CHECK(rel_err(std::exp(log_gamma(std::complex<double>(x, 0.0))).real(), std::exp(log_gamma(x))) < 1e-13);
    // Reflection region: Gamma(-0.5) = -2 sqrt(pi).
    const auto g = std::exp(log_gamma(std::complex<double>(-0.5, 0.0)));
    CHECK(rel_err(g.real(), -2.0 * std::sqrt(std::numbers::pi)) < 1e-13);
    // |Gamma(1/2 + i t)|^2 = pi / cosh(pi t).
    for (double t : {0.5, 2.0, 10.0})
    {
        const double mod2 = std::norm(std::exp(log_gamma(std::complex<double>(0.5, t))));
        CHECK(rel_err(mod2, std::numbers::pi / std::cosh(std::numbers::pi * t)) < 1e-12);
    }
}

TEST_CASE("beta values and symmetry")
{
    CHECK(rel_err(beta(1.0, 1.0), 1.0) < 1e-15);
    CHECK(rel_err(beta(2.0, 3.0), 1.0 / 12.0) < 1e-14);
    CHECK(rel_err(beta(7.5, 4.2), oracle::beta_7p5_4p2) < 1e-13);
    testgen::Gen g(12);
    for (int i = 0; i < 200; ++i)
    {
        const double a = g.log_uniform(1e-2, 1e3), b = g.log_uniform(1e-2, 1e3);
        CHECK(beta(a, b) == beta(b, a));
        CHECK(log_beta(a, b) == log_beta(b, a));
    }
    CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);
}

TEST_CASE("beta survives arguments whose Gamma values overflow")
{
    const double lb = log_beta(400.0, 500.0);
    const double want = static_cast<double>(boost::multiprecision::lgamma(big(400)) + boost::multiprecision::lgamma(big(500))
                                            - boost::multiprecision::lgamma(big(900)));
    CHECK(rel_err(lb, want) < 1e-13);
}

TEST_CASE("erf values, oddness and asymptote")
{
    CHECK(specfun::erf(0.0) == 0.0);
    CHECK(std::abs(specfun::erf(1.0) - oracle::erf_1) <= 1e-15);
    CHECK(std::abs(specfun::erf(10.0) - 1.0) <= 1e-15);
    testgen::Gen g(13);
    for (int i = 0; i < 300; ++i)
    {
        const double x = g.uniform(-6.0, 6.0);
        CHECK(specfun::erf(-x) == -specfun::erf(x));
        CHECK(std::abs(specfun::erf(x) - static_cast<double>(boost::multiprecision::erf(big(x)))) <= 1e-14);
        CHECK(std::abs(specfun::erf(x)) <= 1.0);
    }
}

TEST_CASE("incomplete beta: reflection and known values")
{
    CHECK(rel_err(regularized_incomplete_beta(0.5, 2.0, 2.0), 0.5) < 1e-14);
    // I_x(1, b) = 1 - (1 - x)^b.
    CHECK(rel_err(regularized_incomplete_beta(0.3, 1.0, 4.0), 1.0 - std::pow(0.7, 4.0)) < 1e-14);
    CHECK(regularized_incomplete_beta(0.0, 3.0, 2.0) == 0.0);
    CHECK(regularized_incomplete_beta(1.0, 3.0, 2.0) == 1.0);
    testgen::Gen g(14);
    for (int i = 0; i < 400; ++i)
    {
        const double a = g.log_uniform(0.1, 100.0), b = g.log_uniform(0.1, 100.0), x = g.unit();
        const double lhs = regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(1.0 - x, b, a);
        CHECK(std::abs(lhs - 1.0) <= 1e-12);
        const auto pair = incomplete_beta(a, b, x, 1.0 - x);
        CHECK(std::abs(pair.p + pair.q - 1.0) <= 1e-14);
    }
    CHECK_THROWS_AS(regularized_incomplete_beta(1.5, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.5, 0.0, 1.0), DomainError);
}

TEST_CASE("incomplete beta complement keeps relative accuracy in the upper tail")
{
    // For integer shapes, 1 - I_x(2, 3) = y^4 + 4 x y^3 with y = 1 - x.
    const double y = 1e-12;
    const auto pair = incomplete_beta(2.0, 3.0, 1.0 - y, y);
    const double exact = std::pow(y, 4.0) + 4.0 * (1.0 - y) * std::pow(y, 3.0);
    CHECK(rel_err(pair.q, exact) < 1e-12);
}

TEST_CASE("meijer_g elementary instances")
{
    const auto g11 = meijer_g({1, 1, {1.0 - 2.0 - 3.0}, {0.0}, 1.0});
    CHECK(rel_err(g11.value, oracle::G1111_a2_b3_unit) < 1e-12);
    CHECK(g11.abs_error <= 1e-8);
    const auto ln2 = meijer_g({1, 2, {1.0, 1.0}, {1.0, 0.0}, 1.0});
    CHECK(rel_err(ln2.value, std::numbers::ln2) < 1e-12);
    const auto g23 = meijer_g({2, 3, {1.0 - 5.0, 1.0, 1.0 - 4.0}, {4.0, 5.0, 0.0}, 1.0});
    CHECK(rel_err(g23.value, oracle::G2333_a4_b5_unit) < 1e-10);
}

TEST_CASE("meijer_g G11_11 identity across the parameter grid")
{
    testgen::Gen g(15);
    double worst = 0.0;
    for (int i = 0; i < 150; ++i)
    {
        const double a = g.uniform(0.5, 20.0), b = g.uniform(0.5, 20.0), z = g.log_uniform(1e-3, 1e3);
        const auto r = meijer_g({1, 1, {1.0 - a - b}, {0.0}, z});
        const double log_want = log_gamma(a + b) - (a + b) * std::log1p(z);
        worst = std::max(worst, std::abs(std::expm1(r.log_abs_value - log_want)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("meijer_g ln(1+z) identity for z in [1e-6, 1e6]")
{
    testgen::Gen g(16);
    double worst = 0.0;
    for (int i = 0; i < 150; ++i)
    {
        const double z = g.log_uniform(1e-6, 1e6);
        worst = std::max(worst, rel_err(meijer_g({1, 2, {1.0, 1.0}, {1.0, 0.0}, z}).value, std::log1p(z)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("meijer_g reports a pole collision and validates its arguments")
{
    CHECK_THROWS_AS(meijer_g({1, 1, {2.0}, {0.5}, 1.0}), PoleCollision);
    CHECK_THROWS_AS(meijer_g({1, 1, {0.0}, {0.0}, -1.0}), DomainError);
    CHECK_THROWS_AS(meijer_g({2, 0, {}, {0.0}, 1.0}), DomainError);
    // 2(m+n) - p - q = 0: no vertical-contour decay.
    CHECK_THROWS_AS(meijer_g({1, 0, {0.5}, {0.0}, 1.0}), DomainError);
}

TEST_CASE("meijer_g error estimate brackets the true error")
{
    for (double z : {1e-4, 0.3, 7.0, 5e3})
    {
        const auto r = meijer_g({1, 2, {1.0, 1.0}, {1.0, 0.0}, z});
        CHECK(std::abs(r.value - std::log1p(z)) <= std::max(r.abs_error, 1e-15 * std::log1p(z)) * 10.0);
        CHECK(r.abs_error <= 1e-8);
    }
}
