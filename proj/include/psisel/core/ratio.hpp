#pragma once

#include <psisel/core/error.hpp>

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

namespace psisel {

namespace detail {

inline std::int64_t narrow_checked(__int128 v, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min())
        throw ArithmeticOverflow(std::string(what) + ": value exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("integer addition overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("integer multiplication overflow");
    return r;
}

inline __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

/// Exact rational number num/den in lowest terms with den > 0, plus a
/// distinguished +infinity. Arithmetic throws ArithmeticOverflow instead of
/// wrapping.
class Ratio {
public:
    constexpr Ratio() = default;

    Ratio(std::int64_t num) : num_(num), den_(1) {} // NOLINT: implicit from integers

    Ratio(std::int64_t num, std::int64_t den) {
        if (den == 0)
            throw InvalidInput("Ratio: zero denominator");
        assign(num, den);
    }

    static Ratio infinity() {
        Ratio r;
        r.inf_ = true;
        r.num_ = 1;
        r.den_ = 0;
        return r;
    }

    bool is_infinite() const noexcept { return inf_; }
    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    bool is_zero() const noexcept { return !inf_ && num_ == 0; }
    bool is_integer() const noexcept { return !inf_ && den_ == 1; }

    double to_double() const noexcept {
        return inf_ ? std::numeric_limits<double>::infinity()
                    : static_cast<double>(num_) / static_cast<double>(den_);
    }

    friend Ratio operator+(const Ratio& a, const Ratio& b) {
        if (a.inf_ || b.inf_)
            return infinity();
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from128(n, d);
    }

    friend Ratio operator-(const Ratio& a) {
        if (a.inf_)
            throw InvalidInput("Ratio: negating infinity");
        return Ratio(detail::narrow_checked(-static_cast<__int128>(a.num_), "Ratio"), a.den_);
    }

    friend Ratio operator-(const Ratio& a, const Ratio& b) {
        if (b.inf_)
            throw InvalidInput("Ratio: subtracting infinity");
        return a + (-b);
    }

    friend Ratio operator*(const Ratio& a, const Ratio& b) {
        if (a.inf_ || b.inf_) {
            if (a.is_zero() || b.is_zero())
                throw InvalidInput("Ratio: zero times infinity");
            if ((!a.inf_ && a.num_ < 0) || (!b.inf_ && b.num_ < 0))
                throw InvalidInput("Ratio: negative infinity is not representable");
            return infinity();
        }
        return from128(static_cast<__int128>(a.num_) * b.num_,
                       static_cast<__int128>(a.den_) * b.den_);
    }

    friend Ratio operator/(const Ratio& a, const Ratio& b) {
        if (b.inf_) {
            if (a.inf_)
                throw InvalidInput("Ratio: infinity divided by infinity");
            return Ratio(0);
        }
        if (b.num_ == 0)
            throw InvalidInput("Ratio: division by zero");
        if (a.inf_) {
            if (b.num_ < 0)
                throw InvalidInput("Ratio: negative infinity is not representable");
            return infinity();
        }
        return from128(static_cast<__int128>(a.num_) * b.den_,
                       static_cast<__int128>(a.den_) * b.num_);
    }

    friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
        if (a.inf_ || b.inf_)
            return a.inf_ == b.inf_;
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
        if (a.inf_ || b.inf_)
            return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    /// "p/q", "p" for integers, "inf".
    std::string to_string() const {
        if (inf_)
            return "inf";
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p/q", "p", a decimal such as "-0.125", or "inf".
    static Ratio parse(std::string_view text) {
        if (text == "inf")
            return infinity();
        auto bad = [&] { return InvalidInput("Ratio: cannot parse '" + std::string(text) + "'"); };
        if (text.empty())
            throw bad();
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            std::int64_t n = parse_int(text.substr(0, slash), bad);
            std::int64_t d = parse_int(text.substr(slash + 1), bad);
            if (d == 0)
                throw bad();
            return Ratio(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string_view::npos)
            return Ratio(parse_int(text, bad));
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole.front() == '-';
        if (negative || (!whole.empty() && whole.front() == '+'))
            whole.remove_prefix(1);
        if (whole.empty() && frac.empty())
            throw bad();
        for (char c : frac)
            if (c < '0' || c > '9')
                throw bad();
        if (frac.size() > 18)
            throw ArithmeticOverflow("Ratio: too many decimal digits in '" + std::string(text) + "'");
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        std::int64_t w = whole.empty() ? 0 : parse_int(whole, bad);
        if (w < 0)
            throw bad();
        std::int64_t f = frac.empty() ? 0 : parse_int(frac, bad);
        Ratio r = Ratio(w) + Ratio(f, scale);
        return negative ? -r : r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.to_string(); }

private:
    template <typename Bad>
    static std::int64_t parse_int(std::string_view s, Bad bad) {
        if (!s.empty() && s.front() == '+')
            s.remove_prefix(1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc::result_out_of_range)
            throw ArithmeticOverflow("Ratio: integer out of range");
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw bad();
        return v;
    }

    static Ratio from128(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = detail::gcd128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        Ratio r;
        r.num_ = detail::narrow_checked(n, "Ratio");
        r.den_ = detail::narrow_checked(d, "Ratio");
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) {
        *this = from128(num, den);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    bool inf_ = false;
};

} // namespace psisel
