#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tfm::indices {

using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(long long num, long long den = 1);
// "1/2", "0.25", "3", "inf" (-> reciprocal 0 when used as an exponent).
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

// A point of the index square: (1/p, 1/q) in [0,1]^2.
struct IndexPoint {
    Rational inv_p;
    Rational inv_q;

    IndexPoint(Rational ip, Rational iq);
    // From exponents p, q >= 1 given as strings ("inf" allowed).
    static IndexPoint from_exponents(std::string_view p, std::string_view q);

    Rational inv_p_dual() const { return Rational(1) - inv_p; } // 1/p'
    std::string describe() const;
};

enum class Region { I1, I1s, I2, I2s, I3, I3s };
std::string_view to_string(Region r);

// Every region whose (non-strict) defining inequality holds.
std::set<Region> classify_index_point(const IndexPoint& pt);

enum class Regime { large_lambda, small_lambda };
std::string_view to_string(Regime r);
Regime parse_regime(std::string_view s);

// mu1 (large_lambda, starred regions) or mu2 (small_lambda, unstarred regions).
// All applicable branches are evaluated and must agree exactly.
Rational dilation_exponent(const IndexPoint& pt, Regime regime);

// d (alpha - 2) |1/p - 1/2|
double loss_threshold(const Rational& inv_p, double alpha, int d);
Rational loss_threshold_exact(const Rational& inv_p, const Rational& alpha, int d);

struct SpaceTriple {
    Rational inv_p;
    Rational inv_q;
    Rational delta;
};

// (1-theta) a + theta b componentwise.
SpaceTriple interpolate_exponents(const SpaceTriple& a, const SpaceTriple& b, const Rational& theta);

} // namespace tfm::indices
