#pragma once
#include <boost/rational.hpp>
#include <compare>
#include <complex>
#include <map>
#include <string>

#include <json.hpp>

namespace ellq {

using Rational = boost::rational<long long>;
using cplx = std::complex<double>;
using Assignment = std::map<std::string, cplx>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);
double to_double(const Rational& q);

// rational + sum of rational * indeterminate, in units of hbar where used as a shift
class AffineShift {
public:
    AffineShift() = default;
    AffineShift(long long n) : c_(n) {}
    AffineShift(Rational q) : c_(q) {}
    static AffineShift var(const std::string& name, Rational coeff = 1);
    static AffineShift half(long long n) { return AffineShift(Rational(n, 2)); }

    const Rational& constant() const { return c_; }
    const std::map<std::string, Rational>& linear() const { return lin_; }
    bool is_constant() const { return lin_.empty(); }
    Rational coeff(const std::string& name) const;

    AffineShift& operator+=(const AffineShift& o);
    AffineShift& operator-=(const AffineShift& o);
    AffineShift& operator*=(Rational q);
    AffineShift operator-() const;
    friend AffineShift operator+(AffineShift a, const AffineShift& b) { return a += b; }
    friend AffineShift operator-(AffineShift a, const AffineShift& b) { return a -= b; }
    friend AffineShift operator*(AffineShift a, Rational q) { return a *= q; }
    friend AffineShift operator*(Rational q, AffineShift a) { return a *= q; }
    AffineShift operator/(long long n) const;

    bool operator==(const AffineShift& o) const = default;
    std::strong_ordering operator<=>(const AffineShift& o) const;

    AffineShift substitute(const std::string& name, const AffineShift& value) const;
    std::string str() const;

private:
    Rational c_{0};
    std::map<std::string, Rational> lin_;
};

cplx eval_shift(const AffineShift& s, const Assignment& assignment);

void to_json(nlohmann::json& j, const AffineShift& s);
void from_json(const nlohmann::json& j, AffineShift& s);

} // namespace ellq
