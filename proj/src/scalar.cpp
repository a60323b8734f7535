#include "twistres/scalar.hpp"

#include "twistres/errors.hpp"

#include <sstream>

namespace twistres {

namespace {

std::int64_t mod_reduce(const mpz_class& v, std::uint32_t p) {
    mpz_class r = v % p;
    if (r < 0) r += p;
    return r.get_si();
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += p;
    return t;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Scalar::Scalar(long value, std::uint32_t characteristic) : p_(characteristic) {
    if (p_ == 0) {
        q_ = value;
    } else {
        r_ = value % static_cast<long>(p_);
        if (r_ < 0) r_ += p_;
    }
}

Scalar::Scalar(const mpq_class& value, std::uint32_t characteristic) : p_(characteristic) {
    if (p_ == 0) {
        q_ = value;
        q_.canonicalize();
    } else {
        std::int64_t den = mod_reduce(value.get_den(), p_);
        if (den == 0) throw ValidationError("denominator divisible by the characteristic");
        std::int64_t num = mod_reduce(value.get_num(), p_);
        r_ = (num * mod_inverse(den, p_)) % p_;
    }
}

void Scalar::check_same(const Scalar& o) const {
    if (p_ != o.p_) throw SpecMismatch("scalars from fields of different characteristic");
}

bool Scalar::is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar s = *this;
    s += o;
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar s = *this;
    s -= o;
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar s = *this;
    s *= o;
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (p_ == 0)
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : p_ - r_;
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    if (p_ == 0)
        q_ += o.q_;
    else
        r_ = (r_ + o.r_) % p_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    if (p_ == 0)
        q_ -= o.q_;
    else
        r_ = (r_ + p_ - o.r_) % p_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    if (p_ == 0)
        q_ *= o.q_;
    else
        r_ = (r_ * o.r_) % p_;
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw ZeroElement("inverse of zero scalar");
    Scalar s = *this;
    if (p_ == 0)
        s.q_ = 1 / q_;
    else
        s.r_ = mod_inverse(r_, p_);
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

mpq_class Scalar::rational() const { return p_ == 0 ? q_ : mpq_class(r_); }

std::string Scalar::to_string() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

} // namespace twistres
