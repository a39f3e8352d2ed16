#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace cubeph {

/// Element of the prime field GF(P), P < 2^32.
template <std::uint32_t P>
class Fp {
    static_assert(P >= 2);

public:
    static constexpr std::uint32_t modulus = P;

    constexpr Fp() = default;
    constexpr Fp(std::int64_t v)  // NOLINT: implicit lift of integer signs
        : value_(static_cast<std::uint32_t>(((v % static_cast<std::int64_t>(P)) + P) % P)) {}

    constexpr std::uint32_t value() const { return value_; }
    constexpr bool is_zero() const { return value_ == 0; }

    friend constexpr Fp operator+(Fp a, Fp b) {
        std::uint64_t s = std::uint64_t{a.value_} + b.value_;
        return raw(static_cast<std::uint32_t>(s >= P ? s - P : s));
    }
    friend constexpr Fp operator-(Fp a, Fp b) {
        return raw(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + (P - b.value_));
    }
    friend constexpr Fp operator-(Fp a) { return raw(a.value_ == 0 ? 0 : P - a.value_); }
    friend constexpr Fp operator*(Fp a, Fp b) {
        return raw(static_cast<std::uint32_t>(std::uint64_t{a.value_} * b.value_ % P));
    }
    friend constexpr Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
    Fp& operator+=(Fp b) { return *this = *this + b; }
    Fp& operator-=(Fp b) { return *this = *this - b; }
    Fp& operator*=(Fp b) { return *this = *this * b; }

    friend constexpr bool operator==(Fp, Fp) = default;

    constexpr Fp inverse() const {
        if (value_ == 0) throw std::domain_error("inverse of zero in GF(p)");
        // Fermat: a^(P-2)
        Fp result = raw(1), base = *this;
        std::uint64_t e = P - 2;
        while (e) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.value_; }

private:
    static constexpr Fp raw(std::uint32_t v) {
        Fp f;
        f.value_ = v;
        return f;
    }
    std::uint32_t value_ = 0;
};

/// Default coefficients: GF(2^31 - 1).
using Mersenne31 = Fp<2147483647u>;
/// Fast mode, may disagree with real coefficients when 2-torsion exists.
using GF2 = Fp<2u>;
/// Exact rationals for cross-checks on small complexes.
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& r) { return r == 0; }
template <std::uint32_t P>
constexpr bool is_zero(Fp<P> a) { return a.is_zero(); }

enum class FieldKind { mersenne31, gf2, rational };

}  // namespace cubeph
