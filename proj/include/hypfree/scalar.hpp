#pragma once

// Exact scalars in Q or a real quadratic extension Q(sqrt d).

#include <cmath>
#include <cstdint>
#include <gmpxx.h>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypfree {

/// True if d > 1 and no square of a prime divides d.
inline bool is_squarefree_radicand(std::int64_t d) {
    if (d < 2)
        return false;
    for (std::int64_t p = 2; p * p <= d; ++p)
        if (d % (p * p) == 0)
            return false;
    return true;
}

/// Value a + b*sqrt(d) with a, b rational. A radicand of 0 tags the value as
/// rational, in which case b is always 0. Values with different nonzero
/// radicands cannot be combined.
class Scalar {
  public:
    Scalar() = default;
    Scalar(int v) : rat_(v) {}
    Scalar(long v) : rat_(v) {}
    Scalar(long long v) : rat_(static_cast<long>(v)) {}
    explicit Scalar(mpq_class v) : rat_(std::move(v)) { rat_.canonicalize(); }
    Scalar(mpq_class rat, mpq_class root, std::int64_t radicand)
        : rat_(std::move(rat)), root_(std::move(root)), radicand_(radicand) {
        rat_.canonicalize();
        root_.canonicalize();
        if (radicand_ == 0 && sgn(root_) != 0)
            throw std::domain_error("rational scalar with nonzero root part");
        if (radicand_ != 0 && !is_squarefree_radicand(radicand_))
            throw std::domain_error("radicand must be a square-free integer > 1");
    }

    /// sqrt(d) itself.
    static Scalar root_of(std::int64_t d) { return Scalar(0, 1, d); }

    const mpq_class& rational_part() const noexcept { return rat_; }
    const mpq_class& root_part() const noexcept { return root_; }
    std::int64_t radicand() const noexcept { return radicand_; }

    bool is_zero() const noexcept { return sgn(rat_) == 0 && sgn(root_) == 0; }
    bool is_one() const noexcept { return sgn(root_) == 0 && rat_ == 1; }
    bool is_rational() const noexcept { return sgn(root_) == 0; }

    Scalar operator-() const {
        Scalar r = *this;
        r.rat_ = -r.rat_;
        r.root_ = -r.root_;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        radicand_ = joint_radicand(*this, o);
        rat_ += o.rat_;
        if (sgn(o.root_) != 0)
            root_ += o.root_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        radicand_ = joint_radicand(*this, o);
        rat_ -= o.rat_;
        if (sgn(o.root_) != 0)
            root_ -= o.root_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        radicand_ = joint_radicand(*this, o);
        if (sgn(root_) == 0 && sgn(o.root_) == 0) {
            rat_ *= o.rat_;
            return *this;
        }
        mpq_class a = rat_ * o.rat_ + root_ * o.root_ * radicand_;
        mpq_class b = rat_ * o.root_ + root_ * o.rat_;
        rat_ = std::move(a);
        root_ = std::move(b);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    Scalar inverse() const {
        if (is_zero())
            throw std::domain_error("division by zero scalar");
        if (sgn(root_) == 0) {
            Scalar r = *this;
            r.rat_ = 1 / rat_;
            return r;
        }
        mpq_class norm = rat_ * rat_ - root_ * root_ * radicand_;
        return Scalar(rat_ / norm, -root_ / norm, radicand_);
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.rat_ != b.rat_ || a.root_ != b.root_)
            return false;
        return sgn(a.root_) == 0 || a.radicand_ == b.radicand_;
    }

    /// Total order used for canonical sorting: lexicographic on
    /// (rational part, root part). Not the order of the reals.
    friend bool canonical_less(const Scalar& a, const Scalar& b) {
        int c = cmp(a.rat_, b.rat_);
        if (c != 0)
            return c < 0;
        return cmp(a.root_, b.root_) < 0;
    }

    /// Sign as a real number.
    int real_sign() const {
        int sa = sgn(rat_), sb = sgn(root_);
        if (sb == 0)
            return sa;
        if (sa == 0)
            return sb;
        if (sa == sb)
            return sa;
        // a + b sqrt d with opposite signs: compare a^2 with b^2 d
        int c = cmp(rat_ * rat_, root_ * root_ * radicand_);
        return c > 0 ? sa : sb;
    }

    double approx() const {
        return rat_.get_d() + root_.get_d() * std::sqrt(static_cast<double>(radicand_));
    }

    /// `a/b`, or `a/b+c/d*r` where r is the adjoined root. Integers print
    /// without denominator, and a zero rational part is omitted.
    std::string to_string() const {
        if (sgn(root_) == 0)
            return rat_.get_str();
        std::string out;
        if (sgn(rat_) != 0)
            out = rat_.get_str();
        mpq_class mag = abs(root_);
        if (sgn(root_) < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        out += mag.get_str() + "*r";
        return out;
    }

    /// Parses the text form written by to_string. `radicand` is the field of
    /// the surrounding document (0 for Q); a root term requires it nonzero.
    static Scalar parse(std::string_view text, std::int64_t radicand) {
        std::string s;
        for (char ch : text)
            if (ch != ' ' && ch != '\t')
                s.push_back(ch);
        if (s.empty())
            throw std::invalid_argument("empty scalar");
        mpq_class rat = 0, root = 0;
        std::size_t pos = 0;
        bool any = false;
        while (pos < s.size()) {
            int sign = 1;
            if (s[pos] == '+' || s[pos] == '-') {
                sign = s[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (any) {
                throw std::invalid_argument("malformed scalar '" + s + "'");
            }
            std::size_t end = pos;
            while (end < s.size() && s[end] != '+' && s[end] != '-')
                ++end;
            std::string term = s.substr(pos, end - pos);
            pos = end;
            if (term.empty())
                throw std::invalid_argument("malformed scalar '" + s + "'");
            bool is_root = false;
            if (term == "r") {
                term = "1";
                is_root = true;
            } else if (term.size() > 2 && term.ends_with("*r")) {
                term.resize(term.size() - 2);
                is_root = true;
            }
            mpq_class value = parse_fraction(term, s);
            if (sign < 0)
                value = -value;
            if (is_root) {
                if (radicand == 0)
                    throw std::invalid_argument("root term in rational field: '" + s + "'");
                root += value;
            } else {
                rat += value;
            }
            any = true;
        }
        return Scalar(rat, root, radicand);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

  private:
    static std::int64_t joint_radicand(const Scalar& a, const Scalar& b) {
        if (a.radicand_ == b.radicand_ || b.radicand_ == 0)
            return a.radicand_;
        if (a.radicand_ == 0)
            return b.radicand_;
        throw std::domain_error("scalars from different quadratic fields");
    }

    static mpq_class parse_fraction(const std::string& term, const std::string& whole) {
        std::size_t slash = term.find('/');
        auto digits = [](std::string_view t) {
            return !t.empty() && t.find_first_not_of("0123456789") == std::string_view::npos;
        };
        std::string_view num = std::string_view(term).substr(0, slash);
        std::string_view den = slash == std::string::npos
                                   ? std::string_view("1")
                                   : std::string_view(term).substr(slash + 1);
        if (!digits(num) || !digits(den))
            throw std::invalid_argument("malformed scalar '" + whole + "'");
        mpz_class n{std::string(num)}, d{std::string(den)};
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + whole + "'");
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }

    mpq_class rat_ = 0;
    mpq_class root_ = 0;
    std::int64_t radicand_ = 0;
};

} // namespace hypfree
