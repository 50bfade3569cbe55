#include <multex/bignat.hpp>

#include <stdexcept>

namespace multex {

BigNat::BigNat(std::uint64_t v)
{
    // mpz_class has no portable uint64 constructor on every platform
    mpz_import(value_.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
}

BigNat BigNat::pow(std::uint64_t base, std::uint64_t exponent)
{
    BigNat out;
    BigNat b {base};
    mpz_pow_ui(out.value_.get_mpz_t(), b.value_.get_mpz_t(), static_cast<unsigned long>(exponent));
    return out;
}

BigNat BigNat::from_decimal(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty decimal string");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("not a decimal natural: " + std::string(text));
    BigNat out;
    out.value_.set_str(std::string(text), 10);
    return out;
}

std::string BigNat::to_decimal() const { return value_.get_str(10); }

BigNat BigNat::scaled_quotient(const BigNat& den, unsigned digits) const
{
    if (den.is_zero())
        throw std::domain_error("division by zero");
    BigNat out;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class num = value_ * scale;
    mpz_fdiv_q(out.value_.get_mpz_t(), num.get_mpz_t(), den.value_.get_mpz_t());
    return out;
}

BigNat& BigNat::operator*=(const BigNat& rhs)
{
    value_ *= rhs.value_;
    return *this;
}

BigNat& BigNat::operator+=(const BigNat& rhs)
{
    value_ += rhs.value_;
    return *this;
}

std::string decimal_ratio(const BigNat& num, const BigNat& den, unsigned digits)
{
    std::string s = num.scaled_quotient(den, digits).to_decimal();
    if (digits == 0)
        return s;
    if (s.size() <= digits)
        s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, 1, '.');
    return s;
}

} // namespace multex
