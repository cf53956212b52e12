#pragma once

// Homogeneous multivariate polynomials over Scalar, with the graded
// lexicographic monomial basis used to coordinatize each graded piece.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace hypfree {

using Exponent = std::vector<int>;

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

/// dim S_d for S a polynomial ring in `vars` variables; 0 for d < 0.
inline std::size_t monomial_count(int vars, int degree) {
    if (degree < 0)
        return 0;
    if (vars == 0)
        return degree == 0 ? 1 : 0;
    return binomial(static_cast<std::size_t>(degree + vars - 1), static_cast<std::size_t>(vars - 1));
}

namespace detail {
inline void enumerate_monomials(int vars, int degree, Exponent& cur, std::vector<Exponent>& out) {
    std::size_t pos = cur.size();
    if (static_cast<int>(pos) == vars - 1) {
        cur.push_back(degree);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur.push_back(e);
        enumerate_monomials(vars, degree - e, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

/// All exponent vectors of weight `degree` in graded-lex order, i.e.
/// lexicographically descending: (2,0), (1,1), (0,2).
inline std::vector<Exponent> monomial_basis(int vars, int degree) {
    if (vars < 1)
        throw std::invalid_argument("monomial_basis: need at least one variable");
    std::vector<Exponent> out;
    if (degree < 0)
        return out;
    out.reserve(monomial_count(vars, degree));
    Exponent cur;
    cur.reserve(static_cast<std::size_t>(vars));
    detail::enumerate_monomials(vars, degree, cur, out);
    return out;
}

/// Position of `e` in monomial_basis(e.size(), |e|).
inline std::size_t monomial_rank(std::span<const int> e) {
    int remaining = 0;
    for (int v : e)
        remaining += v;
    std::size_t rank = 0;
    int vars = static_cast<int>(e.size());
    for (int i = 0; i + 1 < vars; ++i) {
        for (int v = e[i] + 1; v <= remaining; ++v)
            rank += monomial_count(vars - i - 1, remaining - v);
        remaining -= e[i];
    }
    return rank;
}

/// A homogeneous polynomial. Zero coefficients are never stored; the zero
/// polynomial keeps whatever degree it was created with.
class HomPoly {
  public:
    using Terms = std::map<Exponent, Scalar, std::greater<>>;

    HomPoly() = default;
    HomPoly(int vars, int degree) : vars_(vars), degree_(degree) {
        if (vars < 1 || degree < 0)
            throw std::invalid_argument("HomPoly: bad shape");
    }

    static HomPoly constant(int vars, const Scalar& c) {
        HomPoly p(vars, 0);
        p.add_term(Exponent(static_cast<std::size_t>(vars), 0), c);
        return p;
    }
    static HomPoly monomial(Exponent e, const Scalar& c = Scalar(1)) {
        int d = 0;
        for (int v : e)
            d += v;
        HomPoly p(static_cast<int>(e.size()), d);
        p.add_term(std::move(e), c);
        return p;
    }
    static HomPoly variable(int vars, int index) {
        Exponent e(static_cast<std::size_t>(vars), 0);
        e[static_cast<std::size_t>(index)] = 1;
        return monomial(std::move(e));
    }
    static HomPoly linear(std::span<const Scalar> coeffs) {
        HomPoly p(static_cast<int>(coeffs.size()), 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(std::move(e), coeffs[i]);
        }
        return p;
    }
    static HomPoly from_dense(int vars, int degree, std::span<const Scalar> coeffs) {
        HomPoly p(vars, degree);
        auto basis = monomial_basis(vars, degree);
        if (coeffs.size() != basis.size())
            throw std::invalid_argument("HomPoly::from_dense: size mismatch");
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!coeffs[i].is_zero())
                p.terms_.emplace_hint(p.terms_.end(), std::move(basis[i]), coeffs[i]);
        return p;
    }

    int vars() const noexcept { return vars_; }
    int degree() const noexcept { return degree_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    Scalar coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(Exponent e, const Scalar& c) {
        if (static_cast<int>(e.size()) != vars_)
            throw std::invalid_argument("HomPoly::add_term: wrong number of variables");
        int d = 0;
        for (int v : e)
            d += v;
        if (d != degree_)
            throw std::invalid_argument("HomPoly::add_term: degree mismatch");
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    /// Leading term in lex order; requires a nonzero polynomial.
    const std::pair<const Exponent, Scalar>& leading() const { return *terms_.begin(); }

    /// Dense coefficients in monomial_basis order.
    std::vector<Scalar> dense() const {
        std::vector<Scalar> out(monomial_count(vars_, degree_));
        for (const auto& [e, c] : terms_)
            out[monomial_rank(e)] = c;
        return out;
    }

    HomPoly operator-() const {
        HomPoly r = *this;
        for (auto& [e, c] : r.terms_)
            c = -c;
        return r;
    }

    HomPoly& operator+=(const HomPoly& o) { return accumulate(o, false); }
    HomPoly& operator-=(const HomPoly& o) { return accumulate(o, true); }
    HomPoly& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
    friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
    friend HomPoly operator*(HomPoly a, const Scalar& s) { return a *= s; }
    friend HomPoly operator*(const Scalar& s, HomPoly a) { return a *= s; }

    friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
        if (a.vars_ != b.vars_)
            throw std::invalid_argument("HomPoly product: variable count mismatch");
        HomPoly r(a.vars_, a.degree_ + b.degree_);
        Exponent e(static_cast<std::size_t>(a.vars_));
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const HomPoly& a, const HomPoly& b) {
        if (a.vars_ != b.vars_)
            return false;
        if (a.is_zero() && b.is_zero())
            return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    Scalar evaluate(std::span<const Scalar> point) const {
        if (static_cast<int>(point.size()) != vars_)
            throw std::invalid_argument("HomPoly::evaluate: wrong point dimension");
        Scalar total(0);
        for (const auto& [e, c] : terms_) {
            Scalar t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k)
                    t *= point[i];
            total += t;
        }
        return total;
    }

    /// Same polynomial viewed in vars()+1 variables, the new variable
    /// inserted at position `pos` with exponent 0.
    HomPoly insert_variable(int pos) const {
        HomPoly r(vars_ + 1, degree_);
        for (const auto& [e, c] : terms_) {
            Exponent ne = e;
            ne.insert(ne.begin() + pos, 0);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string coeff = c.to_string();
            bool needs_parens = !c.is_rational() && c.rational_part() != 0;
            bool is_const = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
            if (!first)
                os << " + ";
            first = false;
            if (needs_parens)
                os << "(" << coeff << ")";
            else if (!c.is_one() || is_const)
                os << coeff;
            bool need_star = !c.is_one() && !is_const;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (need_star)
                    os << "*";
                need_star = true;
                os << "x" << (i + 1);
                if (e[i] > 1)
                    os << "^" << e[i];
            }
        }
        return os.str();
    }

  private:
    HomPoly& accumulate(const HomPoly& o, bool negate) {
        if (vars_ != o.vars_)
            throw std::invalid_argument("HomPoly sum: variable count mismatch");
        if (o.is_zero())
            return *this;
        if (is_zero())
            degree_ = o.degree_;
        else if (degree_ != o.degree_)
            throw std::invalid_argument("HomPoly sum: degree mismatch");
        for (const auto& [e, c] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(e, negate ? -c : c);
            if (!inserted) {
                if (negate)
                    it->second -= c;
                else
                    it->second += c;
                if (it->second.is_zero())
                    terms_.erase(it);
            }
        }
        return *this;
    }

    int vars_ = 1;
    int degree_ = 0;
    Terms terms_;
};

inline HomPoly pow(const HomPoly& p, int k) {
    HomPoly r = HomPoly::constant(p.vars(), Scalar(1));
    for (int i = 0; i < k; ++i)
        r = r * p;
    return r;
}

/// Returns r with p = q * r, or nullopt when q does not divide p.
/// Throws std::invalid_argument for q = 0.
inline std::optional<HomPoly> exact_divide(const HomPoly& p, const HomPoly& q) {
    if (q.is_zero())
        throw std::invalid_argument("exact_divide: division by the zero polynomial");
    if (p.vars() != q.vars())
        throw std::invalid_argument("exact_divide: variable count mismatch");
    if (p.is_zero())
        return HomPoly(p.vars(), std::max(0, p.degree() - q.degree()));
    if (p.degree() < q.degree())
        return std::nullopt;
    const int vars = p.vars();
    HomPoly quotient(vars, p.degree() - q.degree());
    HomPoly rest = p;
    const auto& [lead_e, lead_c] = q.leading();
    Exponent shift(static_cast<std::size_t>(vars));
    while (!rest.is_zero()) {
        const auto& [re, rc] = rest.leading();
        for (std::size_t i = 0; i < shift.size(); ++i) {
            shift[i] = re[i] - lead_e[i];
            if (shift[i] < 0)
                return std::nullopt;
        }
        HomPoly term = HomPoly::monomial(shift, rc / lead_c);
        rest -= term * q;
        quotient += term;
    }
    if (!(quotient * q == p))
        throw std::logic_error("exact_divide: re-multiplication check failed");
    return quotient;
}

/// Linear substitution x_i -> images[i]. All images must share one degree
/// and one variable count.
class Substitution {
  public:
    explicit Substitution(std::vector<HomPoly> images) : images_(std::move(images)) {
        if (images_.empty())
            throw std::invalid_argument("Substitution: no images");
        powers_.resize(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i)
            powers_[i].push_back(HomPoly::constant(images_[0].vars(), Scalar(1)));
    }

    int target_vars() const { return images_[0].vars(); }
    int image_degree() const { return images_[0].degree(); }

    HomPoly apply(const HomPoly& p) {
        if (static_cast<std::size_t>(p.vars()) != images_.size())
            throw std::invalid_argument("Substitution: variable count mismatch");
        HomPoly out(target_vars(), p.degree() * image_degree());
        for (const auto& [e, c] : p.terms())
            out += apply_monomial(e) * c;
        return out;
    }

    HomPoly apply_monomial(const Exponent& e) {
        HomPoly r = HomPoly::constant(target_vars(), Scalar(1));
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                r = r * power(i, e[i]);
        return r;
    }

  private:
    const HomPoly& power(std::size_t i, int k) {
        auto& cache = powers_[i];
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back() * images_[i]);
        return cache[static_cast<std::size_t>(k)];
    }

    std::vector<HomPoly> images_;
    std::vector<std::vector<HomPoly>> powers_;
};

} // namespace hypfree
