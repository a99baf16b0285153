#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <qsf/qt/io.hpp>
#include <qsf/qt/rat.hpp>

namespace qsf {

/// Polynomial in the series variables u, v over Q(q,t), truncated so that
/// both exponents stay at or below the series order. A default-constructed
/// value has no order bound; combining two values keeps the smaller order.
class UVPoly
{
public:
    using Key = std::pair<int, int>; // (u-exponent, v-exponent)
    static constexpr int unbounded = 1 << 28;

    UVPoly() = default;
    explicit UVPoly(int order) : order_(order) {}
    UVPoly(const QtRat& c, int order = unbounded) : order_(order)
    {
        if (!c.is_zero()) terms_.emplace(Key{0, 0}, c);
    }
    static UVPoly monomial(const QtRat& c, int ue, int ve, int order)
    {
        UVPoly p(order);
        if (ue < 0 || ve < 0) throw std::invalid_argument("UVPoly: negative exponent");
        if (!c.is_zero() && ue <= order && ve <= order) p.terms_.emplace(Key{ue, ve}, c);
        return p;
    }

    int order() const { return order_; }
    const std::map<Key, QtRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    QtRat coefficient(int ue, int ve) const
    {
        auto it = terms_.find({ue, ve});
        return it == terms_.end() ? QtRat{} : it->second;
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Key{0, 0}); }
    QtRat constant() const { return coefficient(0, 0); }

    UVPoly operator-() const
    {
        UVPoly r(*this);
        for (auto& [k, c] : r.terms_) c = -c;
        return r;
    }

    UVPoly& operator+=(const UVPoly& b)
    {
        order_ = std::min(order_, b.order_);
        for (const auto& [k, c] : b.terms_) accumulate(k, c);
        drop_above_order();
        return *this;
    }
    UVPoly& operator-=(const UVPoly& b) { return *this += -b; }
    friend UVPoly operator+(UVPoly a, const UVPoly& b) { return a += b; }
    friend UVPoly operator-(UVPoly a, const UVPoly& b) { return a -= b; }

    friend UVPoly operator*(const UVPoly& a, const UVPoly& b)
    {
        UVPoly r(std::min(a.order_, b.order_));
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                const Key k{ka.first + kb.first, ka.second + kb.second};
                if (k.first > r.order_ || k.second > r.order_) continue;
                r.accumulate(k, ca * cb);
            }
        }
        return r;
    }
    UVPoly& operator*=(const UVPoly& b) { return *this = *this * b; }

    friend UVPoly operator*(const QtRat& s, const UVPoly& a)
    {
        UVPoly r(a.order_);
        if (s.is_zero()) return r;
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, s * c);
        return r;
    }

    /// Applies power_twist to every coefficient and multiplies exponents by n.
    UVPoly twisted(unsigned n) const
    {
        UVPoly r(order_);
        for (const auto& [k, c] : terms_) {
            const Key nk{k.first * static_cast<int>(n), k.second * static_cast<int>(n)};
            if (nk.first > order_ || nk.second > order_) continue;
            r.accumulate(nk, c.power_twist(n));
        }
        return r;
    }

    friend bool operator==(const UVPoly& a, const UVPoly& b) { return a.terms_ == b.terms_; }

private:
    int order_ = unbounded;
    std::map<Key, QtRat> terms_;

    void accumulate(const Key& k, const QtRat& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void drop_above_order()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first.first > order_ || it->first.second > order_) {
                it = terms_.erase(it);
            } else {
                ++it;
            }
        }
    }
};

inline std::string format(const UVPoly& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : p.terms()) {
        std::string mono;
        if (k.first > 0) mono += k.first == 1 ? "u" : "u^" + std::to_string(k.first);
        if (k.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += k.second == 1 ? "v" : "v^" + std::to_string(k.second);
        }
        if (!first) out += " + ";
        first = false;
        if (mono.empty()) {
            out += "(" + format(c) + ")";
        } else if (c.is_one()) {
            out += mono;
        } else {
            out += "(" + format(c) + ")*" + mono;
        }
    }
    return out;
}

} // namespace qsf
