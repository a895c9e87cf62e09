#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ftau {

// Arithmetic or domain failures surfaced to callers. Parse errors carry the
// offending position so the CLI can point at it.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& expected)
        : std::runtime_error("parse error at " + std::to_string(p) + ": expected " + expected),
          pos(p) {}
};

namespace detail {

inline std::int64_t add_i64(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw OverflowError("integer overflow in Z[tau] add");
    return r;
}

inline std::int64_t sub_i64(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_sub_overflow(x, y, &r)) throw OverflowError("integer overflow in Z[tau] sub");
    return r;
}

inline std::int64_t mul_i64(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw OverflowError("integer overflow in Z[tau] mul");
    return r;
}

} // namespace detail

enum class Sign { negative = -1, zero = 0, positive = 1 };

// Element a + b*tau of the ring Z[tau], tau = (sqrt(5)-1)/2, tau^2 = 1 - tau.
// The representation (a, b) is unique, so equality is componentwise.
// Coefficients are checked 64-bit integers; overflow throws, never wraps.
struct ZTau {
    std::int64_t a = 0;
    std::int64_t b = 0;

    constexpr ZTau() = default;
    constexpr ZTau(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {}

    static constexpr ZTau zero() { return {0, 0}; }
    static constexpr ZTau one() { return {1, 0}; }
    static constexpr ZTau tau() { return {0, 1}; }

    friend bool operator==(const ZTau&, const ZTau&) = default;

    friend ZTau operator+(const ZTau& p, const ZTau& q) {
        return {detail::add_i64(p.a, q.a), detail::add_i64(p.b, q.b)};
    }
    friend ZTau operator-(const ZTau& p, const ZTau& q) {
        return {detail::sub_i64(p.a, q.a), detail::sub_i64(p.b, q.b)};
    }
    friend ZTau operator-(const ZTau& p) {
        return {detail::sub_i64(0, p.a), detail::sub_i64(0, p.b)};
    }

    // (a1 + b1 t)(a2 + b2 t) with t^2 = 1 - t:
    //   unit part a1 a2 + b1 b2, tau part a1 b2 + a2 b1 - b1 b2.
    friend ZTau operator*(const ZTau& p, const ZTau& q) {
        using namespace detail;
        std::int64_t bb = mul_i64(p.b, q.b);
        std::int64_t a = add_i64(mul_i64(p.a, q.a), bb);
        std::int64_t b = sub_i64(add_i64(mul_i64(p.a, q.b), mul_i64(p.b, q.a)), bb);
        return {a, b};
    }

    double to_double() const {
        // Test/reporting aid only; all decisions go through sign().
        return static_cast<double>(a) + static_cast<double>(b) * 0.6180339887498949;
    }

    std::string str() const { return std::to_string(a) + "," + std::to_string(b); }
};

// Exact sign of a + b*(sqrt(5)-1)/2. Doubling gives (2a - b) + b*sqrt(5);
// when the two summands disagree in sign, compare squares: u vs |v|sqrt(5)
// decided by u^2 vs 5 v^2 (never equal for nonzero integers).
inline Sign sign(const ZTau& p) {
    using namespace detail;
    std::int64_t u = sub_i64(mul_i64(2, p.a), p.b);
    std::int64_t v = p.b;
    if (u == 0 && v == 0) return Sign::zero;
    if (u >= 0 && v >= 0) return Sign::positive;
    if (u <= 0 && v <= 0) return Sign::negative;
    std::int64_t u2 = mul_i64(u, u);
    std::int64_t v2 = mul_i64(5, mul_i64(v, v));
    if (u > 0) return u2 > v2 ? Sign::positive : Sign::negative;
    return v2 > u2 ? Sign::positive : Sign::negative;
}

inline bool operator<(const ZTau& p, const ZTau& q) { return sign(p - q) == Sign::negative; }
inline bool operator>(const ZTau& p, const ZTau& q) { return q < p; }
inline bool operator<=(const ZTau& p, const ZTau& q) { return !(q < p); }
inline bool operator>=(const ZTau& p, const ZTau& q) { return !(p < q); }

// tau^k for any integer k; tau is a unit with tau^-1 = 1 + tau.
inline ZTau tau_pow(std::int64_t k) {
    ZTau base = k >= 0 ? ZTau::tau() : ZTau{1, 1};
    std::int64_t n = k >= 0 ? k : -k;
    ZTau acc = ZTau::one();
    for (std::int64_t i = 0; i < n; ++i) acc = acc * base;
    return acc;
}

// Literal grammar: INT "," INT, optionally wrapped in parentheses.
inline ZTau parse_ztau(std::string_view text) {
    std::size_t i = 0, n = text.size();
    auto skip_ws = [&] { while (i < n && (text[i] == ' ' || text[i] == '\t')) ++i; };
    auto parse_int = [&]() -> std::int64_t {
        skip_ws();
        std::size_t start = i;
        if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
        std::size_t digits = 0;
        std::int64_t value = 0;
        bool neg = start < n && text[start] == '-';
        while (i < n && text[i] >= '0' && text[i] <= '9') {
            int d = text[i] - '0';
            if (__builtin_mul_overflow(value, 10, &value) ||
                __builtin_add_overflow(value, neg ? -d : d, &value))
                throw ParseError(start, "integer within 64-bit range");
            ++digits;
            ++i;
        }
        if (digits == 0) throw ParseError(i, "integer");
        return value;
    };

    skip_ws();
    bool parens = i < n && text[i] == '(';
    if (parens) ++i;
    std::int64_t a = parse_int();
    skip_ws();
    if (i >= n || text[i] != ',') throw ParseError(i, "','");
    ++i;
    std::int64_t b = parse_int();
    skip_ws();
    if (parens) {
        if (i >= n || text[i] != ')') throw ParseError(i, "')'");
        ++i;
    }
    skip_ws();
    if (i != n) throw ParseError(i, "end of Z[tau] literal");
    return {a, b};
}

} // namespace ftau
