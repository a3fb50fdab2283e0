#pragma once
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ellq/cartan.hpp"
#include "ellq/theta.hpp"

namespace ellq {

using PsiKey = std::pair<int, AffineShift>;  // (level, shift)

Rational ell_of(int N, int k);  // (N-k-1)/2, so ell_N = -1/2

// Psi-monomial; the weight is recomputed from the exponents
class EWeight {
public:
    EWeight() = default;
    explicit EWeight(int N) : N_(N) {}

    int N() const { return N_; }
    const std::map<PsiKey, int>& psi() const { return psi_; }
    bool is_unit() const { return psi_.empty(); }
    Weight weight() const;

    EWeight& operator*=(const EWeight& o);
    friend EWeight operator*(EWeight a, const EWeight& b) { return a *= b; }
    EWeight inverse() const;
    EWeight pow(int n) const;
    EWeight& mul_psi(int k, const AffineShift& s, int e);

    bool operator==(const EWeight& o) const = default;
    auto operator<=>(const EWeight& o) const = default;

    EWeight substitute(const std::string& name, const AffineShift& v) const;
    std::string str() const;

private:
    int N_ = 0;
    std::map<PsiKey, int> psi_;
};

EWeight gen_psi(int N, int k, const AffineShift& s);
EWeight gen_Y(int N, int k, const AffineShift& s);   // Y_0 = Y_N-free unit for k = 0
EWeight gen_A(int N, int i, const AffineShift& s);
EWeight gen_box(int N, int k, const AffineShift& s);

// per slot 1..N: shift -> exponent, meaning prod theta(z + s hbar)^e
using SlotFactors = std::vector<std::map<AffineShift, int>>;
SlotFactors components(const EWeight& e);

cplx slot_value(const std::map<AffineShift, int>& f, cplx z, const Assignment& a, const EllipticParams& P);
// f_N(z) f_{N-1}(z+hbar) ... f_{N-l+1}(z+(l-1)hbar)
cplx minor_value(const EWeight& e, int l, cplx z, const EllipticParams& P, const Assignment& a = {});

// Y-exponents (level, shift) for levels 1..N-1; level-N Psi's are returned separately
struct YExpansion {
    std::map<PsiKey, int> y;
    EWeight levelN;
};
YExpansion y_expansion(const EWeight& e);

bool is_right_negative(const EWeight& e);
bool is_dominant(const EWeight& e);
EWeight drop_level_N(const EWeight& e);
EWeight level_N_part(const EWeight& e);

class QCharacter {
public:
    QCharacter() = default;
    explicit QCharacter(int N) : N_(N) {}
    static QCharacter unit(int N);
    static QCharacter monomial(const EWeight& e, long long c = 1);

    int N() const { return N_; }
    const std::map<EWeight, long long>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    long long coeff(const EWeight& e) const;
    long long total() const;  // sum of coefficients (= dimension for modules)

    std::optional<Weight> anchor;
    std::optional<int> depth_limit;

    QCharacter& add(const EWeight& e, long long c);
    QCharacter& operator+=(const QCharacter& o);
    QCharacter& operator-=(const QCharacter& o);
    QCharacter& operator*=(long long c);
    friend QCharacter operator+(QCharacter a, const QCharacter& b) { return a += b; }
    friend QCharacter operator-(QCharacter a, const QCharacter& b) { return a -= b; }
    friend QCharacter operator*(const QCharacter& a, const QCharacter& b);
    friend QCharacter operator*(const QCharacter& a, const EWeight& e);

    bool operator==(const QCharacter& o) const { return N_ == o.N_ && terms_ == o.terms_; }

    QCharacter map_terms(EWeight (*f)(const EWeight&)) const;
    QCharacter substitute(const std::string& name, const AffineShift& v) const;
    std::string str() const;

private:
    void truncate();
    int N_ = 0;
    std::map<EWeight, long long> terms_;
};

void to_json(nlohmann::json& j, const EWeight& e);
void from_json(const nlohmann::json& j, EWeight& e);
void to_json(nlohmann::json& j, const QCharacter& q);
void from_json(const nlohmann::json& j, QCharacter& q);

} // namespace ellq
