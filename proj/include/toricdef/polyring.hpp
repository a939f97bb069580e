#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "toricdef/linalg.hpp"

namespace toricdef {

/// Variable families in increasing order.
enum class Family : std::uint8_t { X = 0, TParam = 1, U0 = 2, U = 3, TT = 4, K = 5 };

/// A named ring variable. Ordered by family, then indices.
class Variable {
public:
    static Variable x(unsigned i) { return Variable(Family::X, i, 0); }   // x1..xr
    static Variable t() { return Variable(Family::TParam, 0, 0); }
    static Variable u0() { return Variable(Family::U0, 0, 0); }
    static Variable u(unsigned i) { return Variable(Family::U, i, 0); }   // u1..un
    static Variable T(unsigned i, unsigned j) { return Variable(Family::TT, i, j); }
    static Variable K(unsigned k) { return Variable(Family::K, k, 0); }  // K0..Km

    Family family() const { return static_cast<Family>(key_ >> 40); }
    unsigned i() const { return static_cast<unsigned>((key_ >> 20) & 0xFFFFF); }
    unsigned j() const { return static_cast<unsigned>(key_ & 0xFFFFF); }

    /// Grading weight: T_ij has weight j, everything else weight 1.
    int weight() const { return family() == Family::TT ? static_cast<int>(j()) : 1; }
    std::string name() const;

    auto operator<=>(const Variable&) const = default;

private:
    Variable(Family f, unsigned i, unsigned j)
        : key_((static_cast<std::uint64_t>(f) << 40) | (static_cast<std::uint64_t>(i) << 20) | j) {}
    std::uint64_t key_ = 0;
};

/// Power product; factors sorted by decreasing variable, exponents positive.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(Variable v, int e = 1);

    const std::vector<std::pair<Variable, int>>& factors() const { return f_; }
    bool is_one() const { return f_.empty(); }
    int degree() const;
    int weighted_degree() const;
    int exponent(Variable v) const;

    Monomial operator*(const Monomial& o) const;
    /// Removes v entirely; returns the remaining monomial.
    Monomial without(Variable v) const;
    bool divides(const Monomial& o) const;
    Monomial quotient(const Monomial& o) const;  // this / o, requires o | this
    std::string to_string() const;

    bool operator==(const Monomial&) const = default;

private:
    std::vector<std::pair<Variable, int>> f_;
};

/// Graded lexicographic order with the variable order above.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Rat, GrlexLess>;

    Polynomial() = default;
    Polynomial(const Rat& c);  // NOLINT: constants convert implicitly
    Polynomial(long c) : Polynomial(Rat(c)) {}
    Polynomial(Variable v);
    Polynomial(const Monomial& m, const Rat& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_term() const;
    int degree() const;
    int weighted_degree() const;  // max over terms; -1 for zero
    std::set<Variable> variables() const;
    /// Greatest term in the term order.
    std::pair<Monomial, Rat> leading_term() const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    Polynomial pow(unsigned e) const;
    Polynomial substitute(const std::map<Variable, Polynomial>& bindings) const;
    /// Decomposition p = sum_e coeff_e * v^e.
    std::map<int, Polynomial> coefficients_in(Variable v) const;
    std::map<int, Polynomial> graded_components() const;
    Rat evaluate(const std::map<Variable, Rat>& point) const;
    Polynomial derivative(Variable v) const;
    /// Scaled so that the leading coefficient is positive (sign only).
    Polynomial sign_normalized() const;
    /// Scaled so that the leading coefficient is 1.
    Polynomial monic() const;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rat& c);
    Terms terms_;
};

std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& ps, const std::vector<Variable>& vars);

/// Parses the canonical text rendering back (also accepts parentheses).
Polynomial parse_polynomial(std::string_view text);

std::string format_rational(const Rat& r);

}  // namespace toricdef
