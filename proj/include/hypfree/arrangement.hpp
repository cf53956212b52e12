#pragma once

// Central hyperplane arrangements and the deletion / restriction / coning
// operations between them.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

namespace hypfree {

namespace detail {
inline bool forms_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Scalar& x, const Scalar& y) { return canonical_less(x, y); });
}

inline std::size_t leading_index(const std::vector<Scalar>& form) {
    for (std::size_t i = 0; i < form.size(); ++i)
        if (!form[i].is_zero())
            return i;
    return form.size();
}
} // namespace detail

/// A linear hyperplane given by its defining form, scaled so the first
/// nonzero coefficient is 1. Proportional forms therefore compare equal.
class Hyperplane {
  public:
    Hyperplane() = default;
    explicit Hyperplane(std::vector<Scalar> form) : form_(std::move(form)) {
        std::size_t p = detail::leading_index(form_);
        if (p == form_.size())
            throw std::invalid_argument("Hyperplane: zero form");
        if (!form_[p].is_one()) {
            Scalar inv = form_[p].inverse();
            for (std::size_t i = p; i < form_.size(); ++i)
                form_[i] *= inv;
        }
    }

    int dim() const noexcept { return static_cast<int>(form_.size()); }
    const std::vector<Scalar>& form() const noexcept { return form_; }
    const Scalar& operator[](std::size_t i) const { return form_[i]; }
    /// Index of the leading coefficient (which equals 1).
    std::size_t pivot() const { return detail::leading_index(form_); }

    HomPoly as_poly() const { return HomPoly::linear(form_); }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < form_.size(); ++i) {
            if (i)
                out += ' ';
            out += form_[i].to_string();
        }
        return out;
    }

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
    friend bool operator<(const Hyperplane& a, const Hyperplane& b) { return detail::forms_less(a.form_, b.form_); }

  private:
    std::vector<Scalar> form_;
};

/// A central arrangement in K^rank. Hyperplanes are kept sorted, so two
/// arrangements with the same hyperplane set compare equal and indices are
/// canonical.
class Arrangement {
  public:
    Arrangement() = default;
    explicit Arrangement(int rank, std::int64_t radicand = 0) : rank_(rank), radicand_(radicand) {
        if (rank < 1)
            throw std::invalid_argument("Arrangement: rank must be positive");
    }

    /// Builds from raw forms. Proportional duplicates are an error unless
    /// `merge_duplicates` is set.
    static Arrangement from_forms(int rank, const std::vector<std::vector<Scalar>>& forms,
                                  std::int64_t radicand = 0, bool merge_duplicates = false) {
        Arrangement a(rank, radicand);
        for (const auto& f : forms) {
            if (static_cast<int>(f.size()) != rank)
                throw std::invalid_argument("Arrangement: form has wrong length");
            Hyperplane h(f);
            if (a.radicand_ == 0)
                for (const auto& c : h.form())
                    if (!c.is_rational())
                        a.radicand_ = c.radicand();
            if (a.contains(h)) {
                if (merge_duplicates)
                    continue;
                throw std::invalid_argument("Arrangement: repeated hyperplane " + h.to_string());
            }
            a.insert_sorted(std::move(h));
        }
        return a;
    }

    int rank() const noexcept { return rank_; }
    std::int64_t radicand() const noexcept { return radicand_; }
    std::size_t size() const noexcept { return planes_.size(); }
    bool empty() const noexcept { return planes_.empty(); }
    const std::vector<Hyperplane>& hyperplanes() const noexcept { return planes_; }
    const Hyperplane& operator[](std::size_t i) const { return planes_.at(i); }
    auto begin() const { return planes_.begin(); }
    auto end() const { return planes_.end(); }

    std::optional<std::size_t> index_of(const Hyperplane& h) const {
        auto it = std::lower_bound(planes_.begin(), planes_.end(), h);
        if (it != planes_.end() && *it == h)
            return static_cast<std::size_t>(it - planes_.begin());
        return std::nullopt;
    }
    bool contains(const Hyperplane& h) const { return index_of(h).has_value(); }

    bool is_subset_of(const Arrangement& other) const {
        if (rank_ != other.rank_)
            return false;
        return std::includes(other.planes_.begin(), other.planes_.end(), planes_.begin(), planes_.end());
    }

    Arrangement with(const Hyperplane& h) const {
        if (h.dim() != rank_)
            throw std::invalid_argument("Arrangement::with: dimension mismatch");
        if (contains(h))
            throw std::invalid_argument("Arrangement::with: hyperplane already present");
        Arrangement r = *this;
        r.insert_sorted(h);
        if (r.radicand_ == 0)
            for (const auto& c : h.form())
                if (!c.is_rational())
                    r.radicand_ = c.radicand();
        return r;
    }

    Arrangement without(std::size_t index) const {
        if (index >= planes_.size())
            throw std::out_of_range("Arrangement: hyperplane index out of range");
        Arrangement r = *this;
        r.planes_.erase(r.planes_.begin() + static_cast<std::ptrdiff_t>(index));
        return r;
    }

    /// Sub-arrangement picked by a bitmask over hyperplane indices.
    Arrangement subset(std::uint64_t mask) const {
        Arrangement r(rank_, radicand_);
        for (std::size_t i = 0; i < planes_.size(); ++i)
            if (mask >> i & 1u)
                r.planes_.push_back(planes_[i]);
        return r;
    }

    /// Canonical text key, suitable for memo tables.
    std::string key() const {
        std::string k = std::to_string(rank_) + "|" + std::to_string(radicand_);
        for (const auto& h : planes_) {
            k += '|';
            k += h.to_string();
        }
        return k;
    }

    friend bool operator==(const Arrangement& a, const Arrangement& b) {
        return a.rank_ == b.rank_ && a.planes_ == b.planes_;
    }

  private:
    void insert_sorted(Hyperplane h) {
        auto it = std::lower_bound(planes_.begin(), planes_.end(), h);
        planes_.insert(it, std::move(h));
    }

    int rank_ = 1;
    std::int64_t radicand_ = 0;
    std::vector<Hyperplane> planes_;
};

/// Q(A), the product of the defining forms.
inline HomPoly q_poly(const Arrangement& a) {
    HomPoly q = HomPoly::constant(a.rank(), Scalar(1));
    for (const auto& h : a)
        q = q * h.as_poly();
    return q;
}

inline Arrangement delete_hyperplane(const Arrangement& a, std::size_t index) { return a.without(index); }

/// Coordinates on H: the variables other than the pivot of alpha_H, in
/// order. Images of x_1..x_l under the substitution x_p = -sum a_j x_j.
inline std::vector<HomPoly> restriction_images(const Hyperplane& h) {
    const int l = h.dim();
    const std::size_t p = h.pivot();
    std::vector<HomPoly> images;
    images.reserve(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        std::vector<Scalar> coeffs(static_cast<std::size_t>(l - 1));
        if (static_cast<std::size_t>(i) == p) {
            for (int j = 0, k = 0; j < l; ++j) {
                if (static_cast<std::size_t>(j) == p)
                    continue;
                coeffs[static_cast<std::size_t>(k++)] = -h[static_cast<std::size_t>(j)];
            }
        } else {
            std::size_t k = static_cast<std::size_t>(i) < p ? static_cast<std::size_t>(i) : static_cast<std::size_t>(i) - 1;
            coeffs[k] = Scalar(1);
        }
        images.push_back(HomPoly::linear(coeffs));
    }
    return images;
}

/// Restriction of a linear form to H in H-coordinates; may be zero.
inline std::vector<Scalar> restrict_form(const Hyperplane& h, const std::vector<Scalar>& form) {
    const std::size_t p = h.pivot();
    std::vector<Scalar> out;
    out.reserve(form.size() - 1);
    for (std::size_t j = 0; j < form.size(); ++j) {
        if (j == p)
            continue;
        out.push_back(form[j] - form[p] * h[j]);
    }
    return out;
}

/// A^H, realized in K^(l-1) by eliminating the pivot variable of alpha_H.
inline Arrangement restrict_to(const Arrangement& a, std::size_t index) {
    if (index >= a.size())
        throw std::out_of_range("restrict_to: hyperplane index out of range");
    if (a.rank() < 2)
        throw std::invalid_argument("restrict_to: rank must be at least 2");
    const Hyperplane& h = a[index];
    std::vector<std::vector<Scalar>> images;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == index)
            continue;
        auto f = restrict_form(h, a[i].form());
        if (detail::leading_index(f) == f.size())
            continue;
        images.push_back(std::move(f));
    }
    return Arrangement::from_forms(a.rank() - 1, images, a.radicand(), true);
}

/// Restriction of the arrangement to a hyperplane that need not belong to it.
inline Arrangement restrict_to(const Arrangement& a, const Hyperplane& h) {
    if (auto idx = a.index_of(h))
        return restrict_to(a, *idx);
    Arrangement extended = a.with(h);
    return restrict_to(extended, *extended.index_of(h));
}

inline bool is_essential(const Arrangement& a) {
    if (a.empty())
        return false;
    ExactMatrix m(a.size(), static_cast<std::size_t>(a.rank()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.rank(); ++j)
            m(i, static_cast<std::size_t>(j)) = a[i][static_cast<std::size_t>(j)];
    return matrix_rank(m) == static_cast<std::size_t>(a.rank());
}

/// Affine hyperplane coeffs . x + constant = 0, scaled so the first nonzero
/// coefficient is 1.
struct AffineHyperplane {
    std::vector<Scalar> coeffs;
    Scalar constant;

    AffineHyperplane() = default;
    AffineHyperplane(std::vector<Scalar> c, Scalar k) : coeffs(std::move(c)), constant(std::move(k)) {
        std::size_t p = detail::leading_index(coeffs);
        if (p == coeffs.size())
            throw std::invalid_argument("AffineHyperplane: all coefficients zero");
        Scalar inv = coeffs[p].inverse();
        for (auto& x : coeffs)
            x *= inv;
        constant *= inv;
    }

    friend bool operator==(const AffineHyperplane&, const AffineHyperplane&) = default;
    friend bool operator<(const AffineHyperplane& a, const AffineHyperplane& b) {
        if (a.coeffs != b.coeffs)
            return detail::forms_less(a.coeffs, b.coeffs);
        return canonical_less(a.constant, b.constant);
    }
};

struct AffineArrangement {
    int dim = 1;
    std::int64_t radicand = 0;
    std::vector<AffineHyperplane> lines;

    /// Sorts and rejects repeated hyperplanes.
    void canonicalize() {
        std::sort(lines.begin(), lines.end());
        if (std::adjacent_find(lines.begin(), lines.end()) != lines.end())
            throw std::invalid_argument("AffineArrangement: repeated hyperplane");
    }
};

/// Homogenizes with a new last variable z and adds the hyperplane z = 0.
inline Arrangement cone(const AffineArrangement& aff) {
    std::vector<std::vector<Scalar>> forms;
    forms.reserve(aff.lines.size() + 1);
    for (const auto& line : aff.lines) {
        if (static_cast<int>(line.coeffs.size()) != aff.dim)
            throw std::invalid_argument("cone: line has wrong dimension");
        auto f = line.coeffs;
        f.push_back(line.constant);
        forms.push_back(std::move(f));
    }
    std::vector<Scalar> z(static_cast<std::size_t>(aff.dim + 1));
    z.back() = Scalar(1);
    forms.push_back(std::move(z));
    return Arrangement::from_forms(aff.dim + 1, forms, aff.radicand);
}

/// Dehomogenizes at H: new coordinates are the non-pivot variables together
/// with z = alpha_H, and z is then set to 1.
inline AffineArrangement decone(const Arrangement& a, std::size_t index) {
    if (index >= a.size())
        throw std::out_of_range("decone: hyperplane index out of range");
    const Hyperplane& h = a[index];
    const std::size_t p = h.pivot();
    AffineArrangement aff;
    aff.dim = a.rank() - 1;
    aff.radicand = a.radicand();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == index)
            continue;
        const auto& b = a[i].form();
        aff.lines.emplace_back(restrict_form(h, b), b[p]);
    }
    aff.canonicalize();
    return aff;
}

} // namespace hypfree
