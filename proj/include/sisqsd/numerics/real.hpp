#pragma once

// Arbitrary-precision binary floating point value backed by GNU MPFR.
//
// Every Real carries its own significand precision. There is no process-wide
// default precision: values are created with an explicit Precision, and the
// result of a binary operation takes the larger precision of its operands.
// Operations with built-in arithmetic types keep the precision of the Real.

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sisqsd {

/// Significand width in bits.
struct Precision {
    mpfr_prec_t bits;

    friend constexpr bool operator==(Precision, Precision) = default;
    friend constexpr auto operator<=>(Precision, Precision) = default;
};

class Real {
public:
    Real() : Real(0L, Precision{64}) {}

    template <std::integral I>
    Real(I value, Precision prec) {
        mpfr_init2(v_, prec.bits);
        if constexpr (std::is_signed_v<I>) {
            mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
        } else {
            mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
        }
    }

    template <std::floating_point F>
    Real(F value, Precision prec) {
        mpfr_init2(v_, prec.bits);
        mpfr_set_d(v_, static_cast<double>(value), MPFR_RNDN);
    }

    /// Parses a decimal (or MPFR-accepted) literal, rounding to nearest.
    static Real parse(std::string_view text, Precision prec) {
        Real r(0L, prec);
        std::string s(text);
        if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
            throw std::invalid_argument("not a real number: '" + s + "'");
        }
        return r;
    }

    static Real nan(Precision prec) {
        Real r(0L, prec);
        mpfr_set_nan(r.v_);
        return r;
    }

    /// Copy of `other` rounded to `prec`.
    Real(const Real& other, Precision prec) {
        mpfr_init2(v_, prec.bits);
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    Real(Real&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }

    ~Real() { mpfr_clear(v_); }

    [[nodiscard]] Precision precision() const { return {mpfr_get_prec(v_)}; }

    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    [[nodiscard]] bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }

    /// Decimal scientific notation with `significant` digits, round-half-even
    /// on the exact binary value, e.g. "7.52345e-03".
    [[nodiscard]] std::string to_scientific(int significant) const {
        if (!is_finite()) {
            return is_nan() ? "nan" : (sign() < 0 ? "-inf" : "inf");
        }
        const int decimals = significant > 1 ? significant - 1 : 0;
        char* buf = nullptr;
        const int n = mpfr_asprintf(&buf, "%.*RNe", decimals, v_);
        if (n < 0) {
            throw std::runtime_error("mpfr_asprintf failed");
        }
        std::string out(buf, static_cast<std::size_t>(n));
        mpfr_free_str(buf);
        return out;
    }

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    // Compound arithmetic. The left operand is widened first when the right
    // operand is more precise.
    Real& operator+=(const Real& rhs) {
        widen_to(rhs);
        mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& rhs) {
        widen_to(rhs);
        mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& rhs) {
        widen_to(rhs);
        mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& rhs) {
        widen_to(rhs);
        mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
        return *this;
    }

    template <std::integral I>
    Real& operator+=(I rhs) {
        mpfr_add_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::integral I>
    Real& operator-=(I rhs) {
        mpfr_sub_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::integral I>
    Real& operator*=(I rhs) {
        mpfr_mul_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::integral I>
    Real& operator/=(I rhs) {
        mpfr_div_si(v_, v_, static_cast<long>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::floating_point F>
    Real& operator+=(F rhs) {
        mpfr_add_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::floating_point F>
    Real& operator-=(F rhs) {
        mpfr_sub_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::floating_point F>
    Real& operator*=(F rhs) {
        mpfr_mul_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
        return *this;
    }
    template <std::floating_point F>
    Real& operator/=(F rhs) {
        mpfr_div_d(v_, v_, static_cast<double>(rhs), MPFR_RNDN);
        return *this;
    }

    Real operator-() const {
        Real r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
    friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
    friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
    friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator+(Real lhs, A rhs) { return lhs += rhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator+(A lhs, Real rhs) { return rhs += lhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator-(Real lhs, A rhs) { return lhs -= rhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator-(A lhs, Real rhs) {
        if constexpr (std::is_integral_v<A>) {
            mpfr_si_sub(rhs.v_, static_cast<long>(lhs), rhs.v_, MPFR_RNDN);
        } else {
            mpfr_d_sub(rhs.v_, static_cast<double>(lhs), rhs.v_, MPFR_RNDN);
        }
        return rhs;
    }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator*(Real lhs, A rhs) { return lhs *= rhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator*(A lhs, Real rhs) { return rhs *= lhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator/(Real lhs, A rhs) { return lhs /= rhs; }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend Real operator/(A lhs, Real rhs) {
        if constexpr (std::is_integral_v<A>) {
            mpfr_si_div(rhs.v_, static_cast<long>(lhs), rhs.v_, MPFR_RNDN);
        } else {
            mpfr_d_div(rhs.v_, static_cast<double>(lhs), rhs.v_, MPFR_RNDN);
        }
        return rhs;
    }

    // NaN compares unordered.
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
        if (mpfr_unordered_p(a.v_, b.v_)) {
            return std::partial_ordering::unordered;
        }
        const int c = mpfr_cmp(a.v_, b.v_);
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend bool operator==(const Real& a, A b) {
        return (a <=> b) == std::partial_ordering::equivalent;
    }
    template <typename A>
        requires std::is_arithmetic_v<A>
    friend std::partial_ordering operator<=>(const Real& a, A b) {
        if (a.is_nan()) {
            return std::partial_ordering::unordered;
        }
        int c = 0;
        if constexpr (std::is_integral_v<A>) {
            c = mpfr_cmp_si(a.v_, static_cast<long>(b));
        } else {
            if (b != b) {
                return std::partial_ordering::unordered;
            }
            c = mpfr_cmp_d(a.v_, static_cast<double>(b));
        }
        return c < 0 ? std::partial_ordering::less
                     : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
    }

    friend std::ostream& operator<<(std::ostream& os, const Real& r) {
        return os << r.to_scientific(static_cast<int>(os.precision()));
    }

    friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

private:
    void widen_to(const Real& rhs) {
        if (mpfr_get_prec(rhs.v_) > mpfr_get_prec(v_)) {
            mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
        }
    }

    mpfr_t v_;
};

namespace detail {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
    Real r(0L, x.precision());
    fn(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real log(const Real& x) { return detail::unary(x, mpfr_log); }
inline Real log2(const Real& x) { return detail::unary(x, mpfr_log2); }
inline Real log10(const Real& x) { return detail::unary(x, mpfr_log10); }

inline Real pow(const Real& base, long exponent) {
    Real r(0L, base.precision());
    mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
    return r;
}

inline Real pow(const Real& base, const Real& exponent) {
    const Precision p = std::max(base.precision(), exponent.precision());
    Real r(0L, p);
    mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
    return r;
}

/// 2^e at the given precision (exact).
inline Real exp2i(long e, Precision prec) {
    Real r(1L, prec);
    mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

/// n! rounded to the given precision.
inline Real factorial(unsigned long n, Precision prec) {
    Real r(0L, prec);
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}

inline const Real& max(const Real& a, const Real& b) { return (a < b) ? b : a; }
inline const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }

}  // namespace sisqsd
