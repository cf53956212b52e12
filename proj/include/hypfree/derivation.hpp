#pragma once

// Homogeneous derivations and the graded pieces D(A)_d of the logarithmic
// derivation module.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "matrix.hpp"
#include "multimodular.hpp"
#include "polynomial.hpp"

namespace hypfree {

/// theta = sum_i f_i d/dx_i with all f_i homogeneous of one degree.
class Derivation {
  public:
    Derivation() = default;
    explicit Derivation(std::vector<HomPoly> components) : components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("Derivation: no components");
        degree_ = -1;
        for (const auto& c : components_) {
            if (c.vars() != static_cast<int>(components_.size()))
                throw std::invalid_argument("Derivation: component has wrong variable count");
            if (!c.is_zero()) {
                if (degree_ >= 0 && c.degree() != degree_)
                    throw std::invalid_argument("Derivation: components of different degrees");
                degree_ = c.degree();
            }
        }
        if (degree_ < 0)
            degree_ = components_[0].degree();
        for (auto& c : components_)
            if (c.is_zero())
                c = HomPoly(c.vars(), degree_);
    }

    static Derivation zero(int rank, int degree) {
        return Derivation(std::vector<HomPoly>(static_cast<std::size_t>(rank), HomPoly(rank, degree)));
    }

    static Derivation euler(int rank) {
        std::vector<HomPoly> comps;
        for (int i = 0; i < rank; ++i)
            comps.push_back(HomPoly::variable(rank, i));
        return Derivation(std::move(comps));
    }

    /// Inverse of to_vector: component-major blocks in monomial_basis order.
    static Derivation from_vector(int rank, int degree, std::span<const Scalar> v) {
        const std::size_t n = monomial_count(rank, degree);
        if (v.size() != n * static_cast<std::size_t>(rank))
            throw std::invalid_argument("Derivation::from_vector: size mismatch");
        std::vector<HomPoly> comps;
        for (int i = 0; i < rank; ++i)
            comps.push_back(HomPoly::from_dense(rank, degree, v.subspan(static_cast<std::size_t>(i) * n, n)));
        return Derivation(std::move(comps));
    }

    int rank() const noexcept { return static_cast<int>(components_.size()); }
    int degree() const noexcept { return degree_; }
    const std::vector<HomPoly>& components() const noexcept { return components_; }
    const HomPoly& operator[](std::size_t i) const { return components_.at(i); }

    bool is_zero() const {
        for (const auto& c : components_)
            if (!c.is_zero())
                return false;
        return true;
    }

    std::vector<Scalar> to_vector() const {
        const std::size_t n = monomial_count(rank(), degree_);
        std::vector<Scalar> v(n * components_.size());
        for (std::size_t i = 0; i < components_.size(); ++i)
            for (const auto& [e, c] : components_[i].terms())
                v[i * n + monomial_rank(e)] = c;
        return v;
    }

    /// Coordinates of (x^shift) * theta in degree degree()+|shift|.
    std::vector<Scalar> shifted_vector(const Exponent& shift) const {
        int extra = 0;
        for (int s : shift)
            extra += s;
        const std::size_t n = monomial_count(rank(), degree_ + extra);
        std::vector<Scalar> v(n * components_.size());
        Exponent e(shift.size());
        for (std::size_t i = 0; i < components_.size(); ++i)
            for (const auto& [base, c] : components_[i].terms()) {
                for (std::size_t k = 0; k < e.size(); ++k)
                    e[k] = base[k] + shift[k];
                v[i * n + monomial_rank(e)] = c;
            }
        return v;
    }

    /// theta(alpha) for a linear form alpha.
    HomPoly apply(const std::vector<Scalar>& form) const {
        HomPoly r(rank(), degree_);
        for (std::size_t i = 0; i < components_.size(); ++i)
            if (!form[i].is_zero())
                r += components_[i] * form[i];
        return r;
    }
    HomPoly apply(const Hyperplane& h) const { return apply(h.form()); }

    /// theta(alpha_H) lies in S alpha_H.
    bool is_tangent(const Hyperplane& h) const {
        HomPoly v = apply(h);
        return v.is_zero() || exact_divide(v, h.as_poly()).has_value();
    }

    Derivation operator-() const {
        auto comps = components_;
        for (auto& c : comps)
            c = -c;
        return Derivation(std::move(comps));
    }
    friend Derivation operator+(const Derivation& a, const Derivation& b) {
        check_same_rank(a, b);
        std::vector<HomPoly> comps;
        for (std::size_t i = 0; i < a.components_.size(); ++i)
            comps.push_back(a.components_[i] + b.components_[i]);
        return Derivation(std::move(comps));
    }
    friend Derivation operator-(const Derivation& a, const Derivation& b) { return a + (-b); }
    friend Derivation operator*(const HomPoly& f, const Derivation& t) {
        std::vector<HomPoly> comps;
        for (const auto& c : t.components_)
            comps.push_back(f * c);
        return Derivation(std::move(comps));
    }
    friend Derivation operator*(const Scalar& s, const Derivation& t) {
        auto comps = t.components_;
        for (auto& c : comps)
            c *= s;
        return Derivation(std::move(comps));
    }

    /// theta / f when f divides every component.
    std::optional<Derivation> divide_by(const HomPoly& f) const {
        std::vector<HomPoly> comps;
        for (const auto& c : components_) {
            auto q = exact_divide(c, f);
            if (!q)
                return std::nullopt;
            comps.push_back(std::move(*q));
        }
        return Derivation(std::move(comps));
    }

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return a.components_ == b.components_ && (a.is_zero() || a.degree_ == b.degree_);
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (components_[i].is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            out += "(" + components_[i].to_string() + ")*d" + std::to_string(i + 1);
        }
        return out.empty() ? "0" : out;
    }

  private:
    static void check_same_rank(const Derivation& a, const Derivation& b) {
        if (a.rank() != b.rank())
            throw std::invalid_argument("Derivation: rank mismatch");
    }

    std::vector<HomPoly> components_;
    int degree_ = 0;
};

/// Index of the first hyperplane theta is not tangent to, or nullopt when
/// theta lies in D(A).
inline std::optional<std::size_t> first_non_tangent(const Derivation& theta, const Arrangement& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!theta.is_tangent(a[i]))
            return i;
    return std::nullopt;
}

inline bool in_module(const Derivation& theta, const Arrangement& a) { return !first_non_tangent(theta, a); }

/// Linear conditions on the coefficient vector of a degree-d derivation
/// expressing that theta(alpha_H) vanishes on H, one block per hyperplane.
inline ExactMatrix tangency_constraints(const Arrangement& a, int d) {
    const int l = a.rank();
    const std::size_t n = monomial_count(l, d);
    const std::size_t cols = n * static_cast<std::size_t>(l);
    ExactMatrix m;
    if (l == 1) {
        // H is the origin; only constants fail to vanish there.
        if (d == 0)
            for (const auto& h : a)
                m.append_row(std::vector<Scalar>{h[0]});
        if (m.rows() == 0)
            m = ExactMatrix(0, cols);
        return m;
    }
    const std::size_t target = monomial_count(l - 1, d);
    auto basis = monomial_basis(l, d);
    std::vector<Scalar> row(cols);
    for (const auto& h : a) {
        Substitution sub(restriction_images(h));
        std::vector<std::vector<Scalar>> images;
        images.reserve(n);
        for (const auto& e : basis)
            images.push_back(sub.apply_monomial(e).dense());
        for (std::size_t t = 0; t < target; ++t) {
            bool any = false;
            for (int i = 0; i < l; ++i) {
                const Scalar& ai = h[static_cast<std::size_t>(i)];
                for (std::size_t k = 0; k < n; ++k) {
                    Scalar& slot = row[static_cast<std::size_t>(i) * n + k];
                    if (ai.is_zero() || images[k][t].is_zero()) {
                        slot = Scalar(0);
                    } else {
                        slot = ai * images[k][t];
                        any = true;
                    }
                }
            }
            if (any)
                m.append_row(row);
        }
    }
    if (m.rows() == 0)
        m = ExactMatrix(0, cols);
    return m;
}

/// Basis of D(A)_d, the kernel of the tangency constraints.
inline std::vector<Derivation> derivation_space(const Arrangement& a, int d) {
    if (d < 0)
        throw std::invalid_argument("derivation_space: negative degree");
    auto kernel = kernel_basis_modular(tangency_constraints(a, d));
    std::vector<Derivation> out;
    out.reserve(kernel.basis.size());
    for (const auto& v : kernel.basis)
        out.push_back(Derivation::from_vector(a.rank(), d, v));
    return out;
}

inline std::size_t derivation_dimension(const Arrangement& a, int d) {
    if (d < 0)
        return 0;
    return kernel_basis_modular(tangency_constraints(a, d)).basis.size();
}

/// sum_i dim S_{d - e_i}: the Hilbert function of a free module with the
/// given generator degrees.
inline std::size_t free_hilbert(int rank, const std::vector<int>& degrees, int d) {
    std::size_t total = 0;
    for (int e : degrees)
        total += monomial_count(rank, d - e);
    return total;
}

} // namespace hypfree
