#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>

namespace wignerlab {

/// Largest supported modulus for phase-space arithmetic. Products of two
/// reduced representatives of a modulus this size fit comfortably in 64 bits.
inline constexpr std::int64_t kMaxModulus = std::int64_t{1} << 21;

/// Canonical representative of x in [0, m). Requires m >= 1.
std::int64_t reduce(std::int64_t x, std::int64_t m);

/// An element of Z_m, always stored reduced.
class ModInt {
  public:
    ModInt(std::int64_t value, std::int64_t modulus);

    std::int64_t value() const noexcept { return value_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    ModInt operator+(const ModInt& other) const;
    ModInt operator-(const ModInt& other) const;
    ModInt operator*(const ModInt& other) const;
    ModInt operator-() const;
    ModInt& operator+=(const ModInt& other) { return *this = *this + other; }
    ModInt& operator-=(const ModInt& other) { return *this = *this - other; }
    ModInt& operator*=(const ModInt& other) { return *this = *this * other; }

    bool operator==(const ModInt& other) const = default;

  private:
    void check_same_ring(const ModInt& other) const;

    std::int64_t value_;
    std::int64_t modulus_;
};

std::ostream& operator<<(std::ostream& out, const ModInt& x);

/// Throws std::invalid_argument when m < 1.
ModInt mod_reduce(std::int64_t x, std::int64_t m);

/// The inverse of 2 in Z_d, which exists only for odd d. Even d throws
/// std::domain_error: this is the obstruction to a phase-point construction
/// in even dimension.
ModInt inv2(std::int64_t d);

/// Modular inverse of a in Z_m, or throws std::domain_error when gcd(a, m) != 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// exp(i*pi*k/d), i.e. omega^(k/2) with omega = exp(2*pi*i/d).
///
/// Phase exponents are kept in Z_{2d} so that the half-integer powers of omega
/// that occur in even dimension are exact. `k` must carry modulus 2d.
std::complex<double> omega_power(const ModInt& k, std::int64_t d);

/// Exponent in Z_{2d} for the integer power omega^j, i.e. 2j mod 2d.
ModInt omega_exponent(std::int64_t j, std::int64_t d);

bool is_prime(std::int64_t n);

/// Checks 1 <= d <= kMaxModulus / 2 and throws std::invalid_argument otherwise.
void check_dimension(std::int64_t d);

}  // namespace wignerlab
