#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include <qsf/qt/gcd.hpp>
#include <qsf/qt/poly.hpp>

namespace qsf {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(q,t)") {}
};

/// Element of Q(q, t) in canonical form.
///
/// num and den are coprime integer polynomials, and the coefficient of the
/// lowest monomial of den is positive. Equal values compare equal by
/// representation.
class QtRat
{
public:
    QtRat() : den_(1) {}
    QtRat(long c) : num_(c), den_(1) {}
    QtRat(const Integer& c) : num_(c), den_(1) {}
    QtRat(QtPoly p) : num_(std::move(p)), den_(1) {}
    QtRat(QtPoly n, QtPoly d) : num_(std::move(n)), den_(std::move(d))
    {
        if (den_.is_zero()) throw DivisionByZero{};
        normalize();
    }
    static QtRat fraction(const Integer& n, const Integer& d) { return QtRat(QtPoly(n), QtPoly(d)); }

    static QtRat q() { return QtRat(QtPoly::q()); }
    static QtRat t() { return QtRat(QtPoly::t()); }
    /// (1 - q)(1 - t)
    static QtRat M() { return QtRat((QtPoly(1) - QtPoly::q()) * (QtPoly(1) - QtPoly::t())); }

    const QtPoly& num() const { return num_; }
    const QtPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    QtRat operator-() const
    {
        QtRat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend QtRat operator+(const QtRat& a, const QtRat& b) { return add(a, b, false); }
    friend QtRat operator-(const QtRat& a, const QtRat& b) { return add(a, b, true); }

    friend QtRat operator*(const QtRat& a, const QtRat& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, QtPoly(1));
        const QtPoly g1 = gcd(a.num_, b.den_);
        const QtPoly g2 = gcd(b.num_, a.den_);
        QtPoly n = divq(a.num_, g1) * divq(b.num_, g2);
        QtPoly d = divq(a.den_, g2) * divq(b.den_, g1);
        return fix_sign(std::move(n), std::move(d));
    }

    friend QtRat operator/(const QtRat& a, const QtRat& b) { return a * b.inverse(); }

    QtRat& operator+=(const QtRat& b) { return *this = *this + b; }
    QtRat& operator-=(const QtRat& b) { return *this = *this - b; }
    QtRat& operator*=(const QtRat& b) { return *this = *this * b; }
    QtRat& operator/=(const QtRat& b) { return *this = *this / b; }

    QtRat inverse() const
    {
        if (is_zero()) throw DivisionByZero{};
        return fix_sign(den_, num_);
    }

    QtRat pow(int n) const
    {
        if (n < 0) return inverse().pow(-n);
        return raw(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
    }

    /// Substitutes q -> q^n and t -> t^n.
    QtRat power_twist(unsigned n) const
    {
        if (n == 0) throw std::invalid_argument("power_twist: n must be positive");
        if (n == 1 || (num_.is_constant() && den_.is_constant())) return *this;
        return QtRat(num_.twist(n), den_.twist(n));
    }

    QtRat swap_qt() const { return QtRat(num_.swap_qt(), den_.swap_qt()); }

    friend bool operator==(const QtRat& a, const QtRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
    QtPoly num_;
    QtPoly den_;

    static QtPoly divq(const QtPoly& a, const QtPoly& g)
    {
        if (g.is_one()) return a;
        return *a.divide_exact(g);
    }

    // Builds from an already-reduced pair, fixing only the sign.
    static QtRat fix_sign(QtPoly n, QtPoly d)
    {
        if (n.is_zero()) return {};
        if (sgn(d.lowest_coefficient()) < 0) {
            n = -n;
            d = -d;
        }
        return raw(std::move(n), std::move(d));
    }

    static QtRat raw(QtPoly n, QtPoly d)
    {
        QtRat r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = QtPoly(1);
            return;
        }
        if (!den_.is_one()) {
            const QtPoly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = *num_.divide_exact(g);
                den_ = *den_.divide_exact(g);
            }
        }
        if (sgn(den_.lowest_coefficient()) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    static QtRat add(const QtRat& a, const QtRat& b, bool subtract)
    {
        if (b.is_zero()) return a;
        if (a.is_zero()) return subtract ? -b : b;
        if (a.den_ == b.den_) {
            QtPoly n = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
            if (a.den_.is_one() || n.is_zero()) return raw_or_zero(std::move(n), a.den_);
            return QtRat(std::move(n), a.den_);
        }
        const QtPoly d1 = gcd(a.den_, b.den_);
        if (d1.is_constant() && abs(d1.constant_term()) == 1) {
            QtPoly n = subtract ? a.num_ * b.den_ - b.num_ * a.den_ : a.num_ * b.den_ + b.num_ * a.den_;
            return fix_sign(std::move(n), a.den_ * b.den_);
        }
        const QtPoly ad = divq(a.den_, d1), bd = divq(b.den_, d1);
        QtPoly t = subtract ? a.num_ * bd - b.num_ * ad : a.num_ * bd + b.num_ * ad;
        if (t.is_zero()) return {};
        const QtPoly d2 = gcd(t, d1);
        return fix_sign(divq(t, d2), ad * divq(b.den_, d2));
    }

    static QtRat raw_or_zero(QtPoly n, const QtPoly& d)
    {
        if (n.is_zero()) return {};
        return raw(std::move(n), d);
    }
};

/// Arithmetic operations accepted by qt_arith.
enum class ArithOp { add, sub, mul, div };

/// Field arithmetic with an explicit error value: std::nullopt signals
/// division by zero.
inline std::optional<QtRat> qt_arith(const QtRat& a, const QtRat& b, ArithOp op)
{
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div:
        if (b.is_zero()) return std::nullopt;
        return a / b;
    }
    return std::nullopt;
}

inline QtRat power_twist(const QtRat& r, unsigned n) { return r.power_twist(n); }

} // namespace qsf
