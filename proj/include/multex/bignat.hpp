#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace multex {

/// Exact nonnegative integer of unbounded size.
///
/// Thin value wrapper over a GMP integer. Only the operations the solver
/// needs are exposed; subtraction is deliberately absent so the value can
/// never go negative.
class BigNat {
public:
    BigNat() = default;
    BigNat(std::uint64_t v); // NOLINT(google-explicit-constructor)

    static BigNat pow(std::uint64_t base, std::uint64_t exponent);

    /// Parses a decimal string of digits; throws std::invalid_argument otherwise.
    static BigNat from_decimal(std::string_view text);

    [[nodiscard]] std::string to_decimal() const;
    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }

    /// Best-effort conversion for display; loses precision above 2^53.
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    /// floor(this * 10^digits / den); den must be nonzero.
    [[nodiscard]] BigNat scaled_quotient(const BigNat& den, unsigned digits) const;

    BigNat& operator*=(const BigNat& rhs);
    BigNat& operator+=(const BigNat& rhs);

    friend BigNat operator*(BigNat lhs, const BigNat& rhs) { return lhs *= rhs; }
    friend BigNat operator+(BigNat lhs, const BigNat& rhs) { return lhs += rhs; }

    friend bool operator==(const BigNat& lhs, const BigNat& rhs) { return cmp(lhs.value_, rhs.value_) == 0; }
    friend std::strong_ordering operator<=>(const BigNat& lhs, const BigNat& rhs)
    {
        const int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

private:
    mpz_class value_ {0};
};

/// Formats floor(num/den) to `digits` decimal places, e.g. "1.000002".
std::string decimal_ratio(const BigNat& num, const BigNat& den, unsigned digits);

} // namespace multex
