#pragma once

// Prime-field arithmetic. Rank estimates and multimodular kernels; anything
// computed here is re-verified over the exact field before it is used.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "scalar.hpp"

namespace hypfree {

template <std::uint32_t P>
class ModP {
    static_assert(P >= 2 && P < (1u << 31), "modulus out of range");

  public:
    constexpr ModP() = default;
    constexpr ModP(long long v) : v_(static_cast<std::uint32_t>(((v % static_cast<long long>(P)) + P) % P)) {}

    static constexpr std::uint32_t modulus() noexcept { return P; }
    constexpr std::uint32_t value() const noexcept { return v_; }
    constexpr bool is_zero() const noexcept { return v_ == 0; }

    constexpr ModP operator-() const { return ModP(v_ == 0 ? 0 : P - v_); }
    constexpr ModP& operator+=(ModP o) {
        v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + o.v_) % P);
        return *this;
    }
    constexpr ModP& operator-=(ModP o) { return *this += -o; }
    constexpr ModP& operator*=(ModP o) {
        v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % P);
        return *this;
    }
    constexpr ModP& operator/=(ModP o) { return *this *= o.inverse(); }

    constexpr ModP inverse() const {
        if (v_ == 0)
            throw std::domain_error("division by zero mod p");
        // Fermat: P is assumed prime
        std::uint64_t result = 1, base = v_, e = P - 2;
        while (e) {
            if (e & 1)
                result = result * base % P;
            base = base * base % P;
            e >>= 1;
        }
        return ModP(static_cast<long long>(result));
    }

    friend constexpr ModP operator+(ModP a, ModP b) { return a += b; }
    friend constexpr ModP operator-(ModP a, ModP b) { return a -= b; }
    friend constexpr ModP operator*(ModP a, ModP b) { return a *= b; }
    friend constexpr ModP operator/(ModP a, ModP b) { return a /= b; }
    friend constexpr bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

    friend std::ostream& operator<<(std::ostream& os, ModP a) { return os << a.v_; }

  private:
    std::uint32_t v_ = 0;
};

/// Reduces a rational scalar mod P; nullopt when the denominator vanishes
/// mod P or the scalar is irrational.
template <std::uint32_t P>
std::optional<ModP<P>> reduce_mod(const Scalar& s) {
    if (!s.is_rational())
        return std::nullopt;
    mpz_class num = s.rational_part().get_num() % P;
    mpz_class den = s.rational_part().get_den() % P;
    if (den == 0)
        return std::nullopt;
    return ModP<P>(num.get_si()) / ModP<P>(den.get_si());
}

} // namespace hypfree
