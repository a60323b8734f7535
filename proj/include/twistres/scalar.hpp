#pragma once

// Exact field elements: arbitrary-precision rationals (characteristic 0)
// or residues modulo a prime p < 2^31.

#include <cstdint>
#include <gmpxx.h>
#include <ostream>
#include <string>

namespace twistres {

class Scalar {
public:
    /// Zero in characteristic 0.
    Scalar() = default;

    Scalar(long value, std::uint32_t characteristic);
    Scalar(const mpq_class& value, std::uint32_t characteristic);

    std::uint32_t characteristic() const { return p_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);

    Scalar inverse() const;

    bool operator==(const Scalar& o) const;

    /// Rational value; in characteristic p this is the residue in [0, p).
    mpq_class rational() const;
    std::int64_t residue() const { return r_; }

    std::string to_string() const;

private:
    void check_same(const Scalar& o) const;

    std::uint32_t p_ = 0;
    std::int64_t r_ = 0;   // used when p_ > 0
    mpq_class q_;          // used when p_ == 0
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// The base field k, identified by its characteristic.
struct Field {
    std::uint32_t characteristic = 0;

    Scalar zero() const { return Scalar(0L, characteristic); }
    Scalar one() const { return Scalar(1L, characteristic); }
    Scalar from(long v) const { return Scalar(v, characteristic); }
    Scalar from(const mpq_class& v) const { return Scalar(v, characteristic); }

    bool operator==(const Field&) const = default;
};

bool is_prime(std::uint64_t n);

} // namespace twistres
