#include "wignerlab/modring.hpp"

#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wignerlab {

std::int64_t reduce(std::int64_t x, std::int64_t m) {
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

ModInt::ModInt(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
    if (modulus < 1) {
        throw std::invalid_argument("modulus must be positive, got " + std::to_string(modulus));
    }
    value_ = reduce(value, modulus);
}

void ModInt::check_same_ring(const ModInt& other) const {
    if (other.modulus_ != modulus_) {
        throw std::invalid_argument("mixed moduli " + std::to_string(modulus_) + " and " +
                                    std::to_string(other.modulus_));
    }
}

ModInt ModInt::operator+(const ModInt& other) const {
    check_same_ring(other);
    return {value_ + other.value_, modulus_};
}

ModInt ModInt::operator-(const ModInt& other) const {
    check_same_ring(other);
    return {value_ - other.value_, modulus_};
}

ModInt ModInt::operator*(const ModInt& other) const {
    check_same_ring(other);
    return {value_ * other.value_, modulus_};
}

ModInt ModInt::operator-() const { return {-value_, modulus_}; }

std::ostream& operator<<(std::ostream& out, const ModInt& x) {
    return out << x.value() << " (mod " << x.modulus() << ")";
}

ModInt mod_reduce(std::int64_t x, std::int64_t m) { return {x, m}; }

ModInt inv2(std::int64_t d) {
    if (d < 1) {
        throw std::invalid_argument("dimension must be positive");
    }
    if (d % 2 == 0) {
        throw std::domain_error("no inverse of 2 in Z_" + std::to_string(d));
    }
    return {(d + 1) / 2, d};
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t old_r = reduce(a, m);
    std::int64_t r = m;
    std::int64_t old_s = 1;
    std::int64_t s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw std::domain_error(std::to_string(a) + " is not invertible mod " + std::to_string(m));
    }
    return reduce(old_s, m);
}

std::complex<double> omega_power(const ModInt& k, std::int64_t d) {
    if (k.modulus() != 2 * d) {
        throw std::invalid_argument("phase exponent must live in Z_{2d}");
    }
    // Exact values on the axes keep phase bookkeeping clean.
    const std::int64_t twice = 2 * k.value();
    const std::int64_t full = 2 * d;
    if (twice == 0) return {1.0, 0.0};
    if (twice == full) return {-1.0, 0.0};
    if (2 * twice == full) return {0.0, 1.0};
    if (2 * twice == 3 * full) return {0.0, -1.0};
    return std::polar(1.0, std::numbers::pi * static_cast<double>(k.value()) / static_cast<double>(d));
}

ModInt omega_exponent(std::int64_t j, std::int64_t d) { return {2 * reduce(j, d), 2 * d}; }

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) return false;
    }
    return true;
}

void check_dimension(std::int64_t d) {
    if (d < 1 || d > kMaxModulus / 2) {
        throw std::invalid_argument("dimension " + std::to_string(d) + " out of range [1, " +
                                    std::to_string(kMaxModulus / 2) + "]");
    }
}

}  // namespace wignerlab
