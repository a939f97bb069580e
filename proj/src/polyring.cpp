#include "toricdef/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "toricdef/errors.hpp"

namespace toricdef {

std::string Variable::name() const {
    switch (family()) {
        case Family::X: return "x" + std::to_string(i());
        case Family::TParam: return "t";
        case Family::U0: return "u0";
        case Family::U: return "u" + std::to_string(i());
        case Family::TT:
            if (i() < 10 && j() < 10) return "T" + std::to_string(i()) + std::to_string(j());
            return "T" + std::to_string(i()) + "_" + std::to_string(j());
        case Family::K: return "K" + std::to_string(i());
    }
    return "?";
}

Monomial::Monomial(Variable v, int e) {
    if (e > 0) f_.emplace_back(v, e);
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += e;
    return d;
}

int Monomial::weighted_degree() const {
    int d = 0;
    for (const auto& [v, e] : f_) d += e * v.weight();
    return d;
}

int Monomial::exponent(Variable v) const {
    for (const auto& [w, e] : f_)
        if (w == v) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    std::size_t a = 0, b = 0;
    while (a < f_.size() || b < o.f_.size()) {
        if (b == o.f_.size() || (a < f_.size() && f_[a].first > o.f_[b].first)) {
            r.f_.push_back(f_[a++]);
        } else if (a == f_.size() || o.f_[b].first > f_[a].first) {
            r.f_.push_back(o.f_[b++]);
        } else {
            r.f_.emplace_back(f_[a].first, f_[a].second + o.f_[b].second);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::without(Variable v) const {
    Monomial r;
    for (const auto& fe : f_)
        if (fe.first != v) r.f_.push_back(fe);
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (const auto& [v, e] : f_)
        if (o.exponent(v) < e) return false;
    return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
    Monomial r;
    for (const auto& [v, e] : f_) {
        int d = e - o.exponent(v);
        if (d < 0) throw std::invalid_argument("Monomial::quotient: not divisible");
        if (d > 0) r.f_.emplace_back(v, d);
    }
    return r;
}

std::string Monomial::to_string() const {
    std::string out;
    for (const auto& [v, e] : f_) {
        if (!out.empty()) out += "*";
        out += v.name();
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
    }
    return fa.size() < fb.size();
}

Polynomial::Polynomial(const Rat& c) {
    if (c != 0) terms_.emplace(Monomial(), c);
}

Polynomial::Polynomial(Variable v) { terms_.emplace(Monomial(v), Rat(1)); }

Polynomial::Polynomial(const Monomial& m, const Rat& c) {
    if (c != 0) terms_.emplace(m, c);
}

void Polynomial::add_term(const Monomial& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

Rat Polynomial::constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? Rat(0) : it->second;
}

int Polynomial::degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

int Polynomial::weighted_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.weighted_degree());
    return d;
}

std::set<Variable> Polynomial::variables() const {
    std::set<Variable> vs;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors()) vs.insert(v);
    return vs;
}

std::pair<Monomial, Rat> Polynomial::leading_term() const {
    if (terms_.empty()) return {Monomial(), Rat(0)};
    return *terms_.rbegin();
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result(1);
    Polynomial base(*this);
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return result;
}

Polynomial Polynomial::substitute(const std::map<Variable, Polynomial>& bindings) const {
    std::map<std::pair<Variable, int>, Polynomial> powers;
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        Polynomial prod(c);
        Monomial kept;
        for (const auto& [v, e] : m.factors()) {
            auto it = bindings.find(v);
            if (it == bindings.end()) {
                kept = kept * Monomial(v, e);
                continue;
            }
            auto key = std::make_pair(v, e);
            auto pit = powers.find(key);
            if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(static_cast<unsigned>(e))).first;
            prod *= pit->second;
        }
        out += prod * Polynomial(kept, Rat(1));
    }
    return out;
}

std::map<int, Polynomial> Polynomial::coefficients_in(Variable v) const {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : terms_) out[m.exponent(v)].add_term(m.without(v), c);
    return out;
}

std::map<int, Polynomial> Polynomial::graded_components() const {
    std::map<int, Polynomial> out;
    for (const auto& [m, c] : terms_) out[m.weighted_degree()].add_term(m, c);
    return out;
}

Rat Polynomial::evaluate(const std::map<Variable, Rat>& point) const {
    Rat total = 0;
    for (const auto& [m, c] : terms_) {
        Rat term = c;
        for (const auto& [v, e] : m.factors()) {
            auto it = point.find(v);
            if (it == point.end()) throw std::invalid_argument("evaluate: no value for " + v.name());
            for (int k = 0; k < e; ++k) term *= it->second;
        }
        total += term;
    }
    return total;
}

Polynomial Polynomial::derivative(Variable v) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(v);
        if (e == 0) continue;
        out.add_term(m.without(v) * Monomial(v, e - 1), c * e);
    }
    return out;
}

Polynomial Polynomial::sign_normalized() const {
    if (terms_.empty() || terms_.rbegin()->second > 0) return *this;
    return -*this;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    const Rat lc = terms_.rbegin()->second;
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c /= lc;
    return r;
}

std::string format_rational(const Rat& r) { return r.get_str(); }

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string term;
        const bool neg = c < 0;
        const Rat a = neg ? Rat(-c) : c;
        if (m.is_one()) term = format_rational(a);
        else if (a == 1) term = m.to_string();
        else term = format_rational(a) + "*" + m.to_string();
        if (out.empty()) out = neg ? "-" + term : term;
        else out += (neg ? " - " : " + ") + term;
    }
    return out;
}

std::vector<std::vector<Polynomial>> jacobian(const std::vector<Polynomial>& ps, const std::vector<Variable>& vars) {
    std::vector<std::vector<Polynomial>> j;
    for (const auto& p : ps) {
        std::vector<Polynomial> row;
        for (const auto& v : vars) row.push_back(p.derivative(v));
        j.push_back(std::move(row));
    }
    return j;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Polynomial parse() {
        auto p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("polynomial: " + what + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial p;
        if (eat('-')) p = -term();
        else p = term();
        for (;;) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }

    Polynomial term() {
        Polynomial p = factor();
        for (;;) {
            if (eat('*')) {
                p *= factor();
            } else if (eat('/')) {
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
                p *= Polynomial(Rat(1) / d.constant_term());
            } else {
                return p;
            }
        }
    }

    Polynomial factor() {
        Polynomial base = atom();
        if (eat('^')) {
            skip();
            auto n = number();
            base = base.pow(static_cast<unsigned>(n.get_ui()));
        }
        return base;
    }

    Int number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Int(std::string(s_.substr(start, pos_ - start)));
    }

    Polynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat('(')) {
            auto p = expr();
            if (!eat(')')) fail("missing ')'");
            return p;
        }
        if (eat('-')) return -factor();
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial(Rat(number()));
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return Polynomial(variable(std::string(s_.substr(start, pos_ - start))));
    }

    Variable variable(const std::string& name) {
        auto digits = [](const std::string& s) {
            return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
        };
        auto num = [](const std::string& s) { return static_cast<unsigned>(std::stoul(s)); };
        const std::string rest = name.substr(1);
        if (name == "t") return Variable::t();
        if (name == "u0") return Variable::u0();
        if (name[0] == 'x' && digits(rest)) return Variable::x(num(rest));
        if (name[0] == 'u' && digits(rest)) return Variable::u(num(rest));
        if (name[0] == 'K' && digits(rest)) return Variable::K(num(rest));
        if (name[0] == 'T') {
            if (auto us = rest.find('_'); us != std::string::npos) {
                auto a = rest.substr(0, us), b = rest.substr(us + 1);
                if (digits(a) && digits(b)) return Variable::T(num(a), num(b));
            } else if (rest.size() == 2 && digits(rest)) {
                return Variable::T(num(rest.substr(0, 1)), num(rest.substr(1)));
            }
        }
        fail("unknown variable '" + name + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) { return Parser(text).parse(); }

}  // namespace toricdef
