#include "tfm/indices.hpp"

#include "tfm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace tfm::indices {

namespace {

const Rational half(1, 2);

void require_unit(const Rational& r, const char* what) {
    if (r < 0 || r > 1)
        throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
}

Rational min2(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational max2(const Rational& a, const Rational& b) { return a < b ? b : a; }

// Reciprocal of an exponent string: "inf" -> 0, "4/3" -> 3/4, "2" -> 1/2.
Rational reciprocal_of_exponent(std::string_view s) {
    if (s == "inf" || s == "infinity")
        return Rational(0);
    const Rational p = parse_rational(s);
    if (p < 1)
        throw InvalidArgument("exponent must be >= 1");
    return Rational(1) / p;
}

} // namespace

Rational make_rational(long long num, long long den) {
    if (den == 0)
        throw InvalidArgument("zero denominator");
    return Rational(num, den);
}

namespace {

// Plain decimal integer. cpp_int's own parser reads "025" as octal and "0x.." as hex.
boost::multiprecision::cpp_int decimal_int(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw InvalidArgument("not a decimal integer: '" + s + "'");
    s.erase(0, std::min(s.find_first_not_of('0'), s.size() - 1));
    boost::multiprecision::cpp_int v(s);
    return neg ? boost::multiprecision::cpp_int(-v) : v;
}

} // namespace

Rational parse_rational(std::string_view s) {
    const std::string str(s);
    try {
        if (const auto slash = str.find('/'); slash != std::string::npos)
            return Rational(decimal_int(str.substr(0, slash)), decimal_int(str.substr(slash + 1)));
        if (const auto dot = str.find('.'); dot != std::string::npos) {
            // Exact decimal: digits after the point become a power-of-ten denominator.
            std::string digits = str.substr(0, dot) + str.substr(dot + 1);
            const auto scale = str.size() - dot - 1;
            boost::multiprecision::cpp_int den = 1;
            for (std::size_t i = 0; i < scale; ++i)
                den *= 10;
            return Rational(decimal_int(digits), den);
        }
        return Rational(decimal_int(str));
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse rational '" + str + "'");
    }
}

std::string to_string(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

IndexPoint::IndexPoint(Rational ip, Rational iq) : inv_p(std::move(ip)), inv_q(std::move(iq)) {
    require_unit(inv_p, "1/p");
    require_unit(inv_q, "1/q");
}

IndexPoint IndexPoint::from_exponents(std::string_view p, std::string_view q) {
    return {reciprocal_of_exponent(p), reciprocal_of_exponent(q)};
}

std::string IndexPoint::describe() const {
    return "(1/p=" + to_string(inv_p) + ", 1/q=" + to_string(inv_q) + ")";
}

std::string_view to_string(Region r) {
    switch (r) {
    case Region::I1: return "I1";
    case Region::I1s: return "I1*";
    case Region::I2: return "I2";
    case Region::I2s: return "I2*";
    case Region::I3: return "I3";
    case Region::I3s: return "I3*";
    }
    return "?";
}

std::set<Region> classify_index_point(const IndexPoint& pt) {
    const Rational& ip = pt.inv_p;
    const Rational& iq = pt.inv_q;
    const Rational ipd = pt.inv_p_dual();
    std::set<Region> out;
    if (max2(ip, ipd) <= iq) out.insert(Region::I1);
    if (min2(ip, ipd) >= iq) out.insert(Region::I1s);
    if (max2(iq, half) <= ipd) out.insert(Region::I2);
    if (min2(iq, half) >= ipd) out.insert(Region::I2s);
    if (max2(iq, half) <= ip) out.insert(Region::I3);
    if (min2(iq, half) >= ip) out.insert(Region::I3s);
    return out;
}

std::string_view to_string(Regime r) { return r == Regime::large_lambda ? "large_lambda" : "small_lambda"; }

Regime parse_regime(std::string_view s) {
    if (s == "large_lambda" || s == "large")
        return Regime::large_lambda;
    if (s == "small_lambda" || s == "small")
        return Regime::small_lambda;
    throw InvalidArgument("unknown regime '" + std::string(s) + "'");
}

Rational dilation_exponent(const IndexPoint& pt, Regime regime) {
    const auto regions = classify_index_point(pt);
    const Rational& ip = pt.inv_p;
    const Rational& iq = pt.inv_q;
    // Branch values shared by both exponents; mu1 reads the starred regions,
    // mu2 the unstarred ones.
    const Rational b1 = -ip;
    const Rational b2 = iq - 1;
    const Rational b3 = -2 * ip + iq;
    const bool large = regime == Regime::large_lambda;
    const std::pair<Region, Rational> branches[] = {
        {large ? Region::I1s : Region::I1, b1},
        {large ? Region::I2s : Region::I2, b2},
        {large ? Region::I3s : Region::I3, b3},
    };
    std::optional<Rational> value;
    for (const auto& [region, v] : branches) {
        if (!regions.contains(region))
            continue;
        if (value && *value != v)
            throw InternalError("dilation exponent branches disagree at " + pt.describe() + ": " +
                                to_string(*value) + " vs " + to_string(v));
        value = v;
    }
    if (!value)
        throw InternalError("no region matches " + pt.describe());
    return *value;
}

double loss_threshold(const Rational& inv_p, double alpha, int d) {
    if (!(alpha >= 2.0))
        throw InvalidArgument("loss_threshold requires alpha >= 2");
    require_unit(inv_p, "1/p");
    return d * (alpha - 2.0) * std::abs(to_double(inv_p - half));
}

Rational loss_threshold_exact(const Rational& inv_p, const Rational& alpha, int d) {
    if (alpha < 2)
        throw InvalidArgument("loss_threshold requires alpha >= 2");
    require_unit(inv_p, "1/p");
    const Rational dev = inv_p - half;
    return Rational(d) * (alpha - 2) * (dev < 0 ? Rational(-dev) : dev);
}

SpaceTriple interpolate_exponents(const SpaceTriple& a, const SpaceTriple& b, const Rational& theta) {
    if (theta <= 0 || theta >= 1)
        throw InvalidArgument("interpolation parameter must lie in (0, 1)");
    const Rational s = 1 - theta;
    return {s * a.inv_p + theta * b.inv_p, s * a.inv_q + theta * b.inv_q, s * a.delta + theta * b.delta};
}

} // namespace tfm::indices
