#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>

namespace twistres {

/// Exponent vector x_1^{e_1} ... x_t^{e_t}. Cyclic group monomials use a
/// single slot holding the power; twisted-product monomials concatenate the
/// left factor's slots with the right factor's.
struct Monomial {
    static constexpr std::size_t kMaxVars = 12;

    std::array<std::uint8_t, kMaxVars> exp{};
    std::uint8_t size = 0;

    Monomial() = default;
    explicit Monomial(std::size_t n) : size(static_cast<std::uint8_t>(n)) {
        if (n > kMaxVars) throw std::length_error("too many variables in monomial");
    }
    Monomial(std::initializer_list<int> e) : Monomial(e.size()) {
        std::size_t i = 0;
        for (int v : e) exp[i++] = static_cast<std::uint8_t>(v);
    }

    std::uint8_t operator[](std::size_t i) const { return exp[i]; }
    std::uint8_t& operator[](std::size_t i) { return exp[i]; }

    int total() const {
        int s = 0;
        for (std::size_t i = 0; i < size; ++i) s += exp[i];
        return s;
    }
    bool is_unit() const { return total() == 0; }

    Monomial concat(const Monomial& o) const {
        Monomial m(size + o.size);
        for (std::size_t i = 0; i < size; ++i) m.exp[i] = exp[i];
        for (std::size_t i = 0; i < o.size; ++i) m.exp[size + i] = o.exp[i];
        return m;
    }
    Monomial slice(std::size_t from, std::size_t count) const {
        Monomial m(count);
        for (std::size_t i = 0; i < count; ++i) m.exp[i] = exp[from + i];
        return m;
    }

    bool operator==(const Monomial& o) const {
        if (size != o.size) return false;
        for (std::size_t i = 0; i < size; ++i)
            if (exp[i] != o.exp[i]) return false;
        return true;
    }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const {
        if (size != o.size) return size < o.size;
        for (std::size_t i = 0; i < size; ++i)
            if (exp[i] != o.exp[i]) return exp[i] < o.exp[i];
        return false;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = m.size;
        for (std::size_t i = 0; i < m.size; ++i) h = h * 1315423911u + m.exp[i] + 1;
        return h;
    }
};

struct MonomialPairHash {
    std::size_t operator()(const std::pair<Monomial, Monomial>& p) const {
        MonomialHash h;
        return h(p.first) * 2654435761u ^ h(p.second);
    }
};

} // namespace twistres
