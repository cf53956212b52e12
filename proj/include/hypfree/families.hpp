#pragma once

// Concrete arrangements: rank-two Weyl arrangements with their Catalan and
// Shi deformations, and the pentagon pair over Q(sqrt 5).

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrangement.hpp"

namespace hypfree {

enum class WeylType { A2, B2, G2 };

inline WeylType parse_weyl_type(const std::string& s) {
    if (s == "A2")
        return WeylType::A2;
    if (s == "B2")
        return WeylType::B2;
    if (s == "G2")
        return WeylType::G2;
    throw std::invalid_argument("unknown Weyl type '" + s + "'");
}

struct Root {
    std::array<int, 2> coords;
    bool is_long = true;
};

struct RootSystem {
    WeylType type = WeylType::A2;
    std::vector<Root> positive_roots;

    std::size_t long_count() const {
        std::size_t n = 0;
        for (const auto& r : positive_roots)
            n += r.is_long;
        return n;
    }
};

/// Positive roots as linear forms on K^2. A2 uses alpha1 = x1 - x2,
/// alpha2 = x2 (so the Weyl arrangement is x1 x2 (x1 - x2)); B2 the
/// orthogonal model; G2 is written in simple-root coordinates with alpha1
/// short and alpha2 long.
inline RootSystem weyl(WeylType t) {
    RootSystem rs;
    rs.type = t;
    switch (t) {
    case WeylType::A2:
        rs.positive_roots = {{{1, -1}, true}, {{0, 1}, true}, {{1, 0}, true}};
        break;
    case WeylType::B2:
        rs.positive_roots = {{{1, -1}, true}, {{1, 1}, true}, {{1, 0}, false}, {{0, 1}, false}};
        break;
    case WeylType::G2:
        rs.positive_roots = {{{0, 1}, true},  {{3, 1}, true},  {{3, 2}, true},
                             {{1, 0}, false}, {{1, 1}, false}, {{2, 1}, false}};
        break;
    }
    return rs;
}

/// Inclusive range of translates j in alpha = j z.
struct TranslateRange {
    int lo = 0;
    int hi = 0;
};

inline TranslateRange catalan_range(int k) {
    if (k < 0)
        throw std::invalid_argument("Catalan parameter must be >= 0");
    return {-k, k};
}

inline TranslateRange shi_range(int k) {
    if (k < 1)
        throw std::invalid_argument("Shi parameter must be >= 1");
    return {-k + 1, k};
}

/// {alpha = j z : alpha long, j in long_range} and likewise for short roots,
/// together with z = 0, in K^3 with coordinates (x1, x2, z).
inline Arrangement deformation(const RootSystem& rs, TranslateRange long_range, TranslateRange short_range) {
    std::vector<std::vector<Scalar>> forms;
    for (const auto& root : rs.positive_roots) {
        TranslateRange r = root.is_long ? long_range : short_range;
        for (int j = r.lo; j <= r.hi; ++j)
            forms.push_back({Scalar(root.coords[0]), Scalar(root.coords[1]), Scalar(-j)});
    }
    forms.push_back({Scalar(0), Scalar(0), Scalar(1)});
    return Arrangement::from_forms(3, forms);
}

inline Arrangement weyl_arrangement(const RootSystem& rs) { return deformation(rs, {0, 0}, {0, 0}); }

inline Arrangement catalan(const RootSystem& rs, int k1, int k2) {
    return deformation(rs, catalan_range(k1), catalan_range(k2));
}
inline Arrangement catalan(const RootSystem& rs, int k) { return catalan(rs, k, k); }

inline Arrangement shi(const RootSystem& rs, int k1, int k2) { return deformation(rs, shi_range(k1), shi_range(k2)); }
inline Arrangement shi(const RootSystem& rs, int k) { return shi(rs, k, k); }

/// Catalan translates on long roots, Shi translates on short roots.
inline Arrangement cat_shi(const RootSystem& rs, int k1, int k2) {
    return deformation(rs, catalan_range(k1), shi_range(k2));
}

/// Shi translates on long roots, Catalan translates on short roots.
inline Arrangement shi_cat(const RootSystem& rs, int k1, int k2) {
    return deformation(rs, shi_range(k1), catalan_range(k2));
}

struct PentagonPair {
    /// Cone over all 5 edges and 5 diagonals (11 planes).
    Arrangement super;
    /// Cone over the 4 lines through p1 plus p2p3 and p3p5 (7 planes).
    Arrangement sub;
    /// Affine vertices p1..p5 in cyclic order.
    std::vector<std::array<Scalar, 2>> vertices;
};

/// Vertices (cos(2 pi k/5), sin(2 pi k/5) / sin(2 pi/5)), an affine image
/// of the regular pentagon with coordinates in Q(sqrt 5).
inline std::vector<std::array<Scalar, 2>> pentagon_vertices() {
    const Scalar r = Scalar::root_of(5);
    const Scalar quarter(mpq_class(1, 4)), half(mpq_class(1, 2));
    const Scalar c1 = (r - Scalar(1)) * quarter;  // cos(2pi/5)
    const Scalar c2 = -(r + Scalar(1)) * quarter; // cos(4pi/5)
    const Scalar y2 = (r - Scalar(1)) * half;     // sin(4pi/5)/sin(2pi/5)
    return {{Scalar(1), Scalar(0)}, {c1, Scalar(1)}, {c2, y2}, {c2, -y2}, {c1, Scalar(-1)}};
}

/// Cone of the affine line through two points: the form a x + b y + c z
/// vanishing at (p, 1) and (q, 1).
inline std::vector<Scalar> line_through(const std::array<Scalar, 2>& p, const std::array<Scalar, 2>& q) {
    return {p[1] - q[1], q[0] - p[0], p[0] * q[1] - q[0] * p[1]};
}

inline PentagonPair pentagon() {
    PentagonPair out;
    out.vertices = pentagon_vertices();
    const auto& v = out.vertices;
    const std::vector<Scalar> z{Scalar(0), Scalar(0), Scalar(1)};

    std::vector<std::vector<Scalar>> all{z};
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            all.push_back(line_through(v[i], v[j]));
    out.super = Arrangement::from_forms(3, all, 5);

    const std::array<std::pair<std::size_t, std::size_t>, 6> sub_pairs{
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 4}}};
    std::vector<std::vector<Scalar>> sub{z};
    for (auto [i, j] : sub_pairs)
        sub.push_back(line_through(v[i], v[j]));
    out.sub = Arrangement::from_forms(3, sub, 5);
    return out;
}

} // namespace hypfree
