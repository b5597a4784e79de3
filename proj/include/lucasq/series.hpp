#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "lucasq/numfield.hpp"
#include "lucasq/padic.hpp"

namespace lucasq {

// Exact zeros can be skipped in products; p-adic zeros still carry precision.
inline bool skippable_zero(const NfElement& c) { return c.is_zero(); }
inline bool skippable_zero(const PadicNfElement&) { return false; }
inline bool exact_zero(const NfElement& c) { return c.is_zero(); }
inline bool exact_zero(const PadicNfElement& c) { return c.is_zero_to_precision(); }

/// Power series sum_{k < order} c_k z^k; terms of degree >= order are dropped.
template <class C>
class Series {
public:
    Series() = default;
    Series(C zero, std::size_t order) : zero_(zero), coeffs_(order, std::move(zero)) {}

    std::size_t order() const { return coeffs_.size(); }
    const C& operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : zero_; }
    C& at(std::size_t k) { return coeffs_.at(k); }
    const C& zero() const { return zero_; }
    const std::vector<C>& coeffs() const { return coeffs_; }

    Series truncated(std::size_t order) const {
        Series r(zero_, order);
        for (std::size_t k = 0; k < order && k < coeffs_.size(); ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    Series& operator+=(const Series& o) {
        resize_min(o.order());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    Series& operator-=(const Series& o) {
        resize_min(o.order());
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    Series operator-() const {
        Series r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Series operator*(const Series& a, const Series& b) {
        const std::size_t n = std::min(a.order(), b.order());
        Series r(a.zero_, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (skippable_zero(a.coeffs_[i])) continue;
            for (std::size_t j = 0; i + j < n; ++j) {
                if (skippable_zero(b.coeffs_[j])) continue;
                r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return r;
    }

    Series scaled(const C& c) const {
        Series r = *this;
        for (auto& x : r.coeffs_) x = c * x;
        return r;
    }

    /// Multiply by z^k (keeps the order).
    Series shifted_up(std::size_t k) const {
        Series r(zero_, order());
        for (std::size_t i = 0; i + k < order(); ++i) r.coeffs_[i + k] = coeffs_[i];
        return r;
    }

    /// Divide by z^k; the low coefficients must vanish exactly. Order drops by k.
    Series shifted_down(std::size_t k) const {
        for (std::size_t i = 0; i < k && i < order(); ++i) {
            if (!exact_zero(coeffs_[i])) throw std::domain_error("Series::shifted_down: nonzero low term");
        }
        Series r(zero_, order() > k ? order() - k : 0);
        for (std::size_t i = k; i < order(); ++i) r.coeffs_[i - k] = coeffs_[i];
        return r;
    }

    /// Multiplicative inverse; the constant term must be invertible.
    Series inverse() const {
        const C c0inv = coeffs_.at(0).inverse();
        Series r(zero_, order());
        r.coeffs_[0] = c0inv;
        for (std::size_t n = 1; n < order(); ++n) {
            C s = zero_;
            for (std::size_t k = 1; k <= n; ++k) {
                if (skippable_zero(coeffs_[k])) continue;
                s += coeffs_[k] * r.coeffs_[n - k];
            }
            r.coeffs_[n] = -(s * c0inv);
        }
        return r;
    }

    /// this(inner(z)); inner must have zero constant term.
    Series compose(const Series& inner) const {
        if (!exact_zero(inner[0])) throw std::domain_error("Series::compose: inner constant term nonzero");
        const std::size_t n = std::min(order(), inner.order());
        Series r(zero_, n);
        Series pw(zero_, n);
        pw.coeffs_[0] = one_like();
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0) pw = pw * inner.truncated(n);
            if (skippable_zero(coeffs_[k])) continue;
            r += pw.scaled(coeffs_[k]);
        }
        return r;
    }

    /// Compositional inverse of z + c_2 z^2 + ...
    Series revert() const {
        Series b(zero_, order());
        if (order() > 1) b.coeffs_[1] = one_like();
        for (std::size_t n = 2; n < order(); ++n) {
            const Series c = truncated(n + 1).compose(b.truncated(n + 1));
            b.coeffs_[n] = -c[n];
        }
        return b;
    }

    /// sum c_k x^k by Horner's rule.
    C evaluate(const C& x) const {
        C acc = zero_;
        for (std::size_t k = order(); k-- > 0;) acc = acc * x + coeffs_[k];
        return acc;
    }

private:
    C one_like() const;

    void resize_min(std::size_t n) {
        if (n < coeffs_.size()) coeffs_.resize(n);
    }

    C zero_;
    std::vector<C> coeffs_;
};

template <>
inline NfElement Series<NfElement>::one_like() const {
    return zero_.field().one();
}

template <>
inline PadicNfElement Series<PadicNfElement>::one_like() const {
    return PadicNfElement::one(zero_.field_ptr(), zero_.prime(), zero_.precision());
}

/// z^shift * series.
template <class C>
struct LaurentSeries {
    int shift = 0;
    Series<C> series;
};

/// sum_{i + j < order} c_{ij} z1^i z2^j.
template <class C>
class BivariateSeries {
public:
    BivariateSeries() = default;
    BivariateSeries(C zero, std::size_t order)
        : zero_(zero), order_(order), coeffs_(order, std::vector<C>(order, zero)) {}

    std::size_t order() const { return order_; }
    const C& coeff(std::size_t i, std::size_t j) const {
        return (i + j < order_) ? coeffs_[i][j] : zero_;
    }
    C& at(std::size_t i, std::size_t j) {
        if (i + j >= order_) throw std::out_of_range("BivariateSeries::at beyond truncation");
        return coeffs_[i][j];
    }
    const C& zero() const { return zero_; }

    /// Embed a series in z1 + z2 form: f(z1) or f(z2).
    static BivariateSeries from_first(const Series<C>& s, std::size_t order) {
        BivariateSeries r(s.zero(), order);
        for (std::size_t i = 0; i < order && i < s.order(); ++i) r.coeffs_[i][0] = s[i];
        return r;
    }
    static BivariateSeries from_second(const Series<C>& s, std::size_t order) {
        BivariateSeries r(s.zero(), order);
        for (std::size_t j = 0; j < order && j < s.order(); ++j) r.coeffs_[0][j] = s[j];
        return r;
    }

    BivariateSeries& operator+=(const BivariateSeries& o) {
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; i + j < order_; ++j) coeffs_[i][j] += o.coeff(i, j);
        return *this;
    }
    BivariateSeries& operator-=(const BivariateSeries& o) {
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; i + j < order_; ++j) coeffs_[i][j] -= o.coeff(i, j);
        return *this;
    }
    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }
    BivariateSeries operator-() const {
        BivariateSeries r = *this;
        for (auto& row : r.coeffs_)
            for (auto& c : row) c = -c;
        return r;
    }

    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        const std::size_t n = std::min(a.order_, b.order_);
        BivariateSeries r(a.zero_, n);
        for (std::size_t i1 = 0; i1 < n; ++i1)
            for (std::size_t j1 = 0; i1 + j1 < n; ++j1) {
                const C& x = a.coeffs_[i1][j1];
                if (skippable_zero(x)) continue;
                for (std::size_t i2 = 0; i1 + j1 + i2 < n; ++i2)
                    for (std::size_t j2 = 0; i1 + j1 + i2 + j2 < n; ++j2) {
                        const C& y = b.coeffs_[i2][j2];
                        if (skippable_zero(y)) continue;
                        r.coeffs_[i1 + i2][j1 + j2] += x * y;
                    }
            }
        return r;
    }

    BivariateSeries scaled(const C& c) const {
        BivariateSeries r = *this;
        for (auto& row : r.coeffs_)
            for (auto& x : row) x = c * x;
        return r;
    }

    /// Inverse when the constant term is invertible.
    BivariateSeries inverse() const {
        // 1/(c0 (1 + h)) = c0^{-1} sum (-h)^k, h without constant term.
        const C c0inv = coeffs_[0][0].inverse();
        BivariateSeries h = scaled(c0inv);
        h.coeffs_[0][0] = zero_;
        BivariateSeries result(zero_, order_);
        BivariateSeries term(zero_, order_);
        term.coeffs_[0][0] = one_from(c0inv);
        const BivariateSeries neg_h = -h;
        for (std::size_t k = 0; k < order_; ++k) {
            if (k > 0) term = term * neg_h;
            result += term;
        }
        return result.scaled(c0inv);
    }

    /// outer(this); this must have zero constant term.
    static BivariateSeries compose(const Series<C>& outer, const BivariateSeries& inner) {
        const std::size_t n = inner.order_;
        BivariateSeries r(inner.zero_, n);
        BivariateSeries pw(inner.zero_, n);
        pw.coeffs_[0][0] = one_from(inner.zero_);
        for (std::size_t k = 0; k < n && k < outer.order(); ++k) {
            if (k > 0) pw = pw * inner;
            if (skippable_zero(outer[k])) continue;
            r += pw.scaled(outer[k]);
        }
        return r;
    }

    /// f(a, z2) as a series in z2, for a fixed element a (power sums truncated at order).
    Series<C> evaluate_first(const C& a) const {
        Series<C> r(zero_, order_);
        std::vector<C> pw{one_from(a)};
        for (std::size_t i = 1; i < order_; ++i) pw.push_back(pw.back() * a);
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = 0; i + j < order_; ++j) {
                if (skippable_zero(coeffs_[i][j])) continue;
                r.at(j) += coeffs_[i][j] * pw[i];
            }
        return r;
    }

    C evaluate(const C& a, const C& b) const { return evaluate_first(a).evaluate(b); }

private:
    static C one_from(const C& like);

    C zero_;
    std::size_t order_ = 0;
    std::vector<std::vector<C>> coeffs_;
};

template <>
inline NfElement BivariateSeries<NfElement>::one_from(const NfElement& like) {
    return like.field().one();
}

template <>
inline PadicNfElement BivariateSeries<PadicNfElement>::one_from(const PadicNfElement& like) {
    return PadicNfElement::one(like.field_ptr(), like.prime(), like.precision());
}

}  // namespace lucasq
