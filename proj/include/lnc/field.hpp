#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lnc/error.hpp"
#include "lnc/prng.hpp"

namespace lnc {

class Field;
using FieldRef = std::shared_ptr<const Field>;

/// F_q for q = p^m <= 2^16. Prime fields (m = 1) use modular arithmetic;
/// binary extension fields (p = 2, m > 1) use log/antilog tables built over
/// a generator of the multiplicative group, so any irreducible reduction
/// polynomial works, primitive or not.
class Field {
  public:
    /// poly is the reduction polynomial bit mask including the x^m bit;
    /// 0 selects the built-in default for the given m.
    static FieldRef make(std::uint32_t p, std::uint32_t m = 1, std::uint32_t poly = 0);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    std::uint32_t order() const { return q_; }
    std::uint32_t reduction_poly() const { return poly_; }

    bool same(const Field& other) const {
        return p_ == other.p_ && m_ == other.m_ && poly_ == other.poly_;
    }

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t neg(std::uint16_t a) const;
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t inv(std::uint16_t a) const; // throws DivisionByZero for 0
    std::uint16_t div(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t pow(std::uint16_t a, std::uint64_t e) const;

    /// Uniform draw over all q elements, zero included.
    std::uint16_t uniform(SplitMix64& rng) const {
        return static_cast<std::uint16_t>(rng.below(q_));
    }

    std::string name() const; // "GF(7)", "GF(2^8)"

    /// Default reduction polynomial for GF(2^m), 2 <= m <= 16.
    static std::uint32_t default_poly(std::uint32_t m);

    /// Irreducibility over GF(2) by trial division against every divisor of
    /// degree 1..m/2. poly must have degree m (bit m set).
    static bool is_irreducible_gf2(std::uint32_t poly, std::uint32_t m);

  private:
    Field() = default;

    std::uint32_t p_ = 0, m_ = 0, q_ = 0, poly_ = 0;
    std::vector<std::uint16_t> exp_; // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint16_t> log_; // log_[exp_[i]] = i, log_[0] unused

    void build_tables();
};

/// A field element bound to its field; arithmetic checks field identity.
class Element {
  public:
    Element(std::uint16_t value, FieldRef field) : v_(value), f_(std::move(field)) {
        if (v_ >= f_->order()) fail(ErrorCode::InvalidArgument, "element value out of range");
    }

    std::uint16_t value() const { return v_; }
    const FieldRef& field() const { return f_; }

    friend Element operator+(const Element& a, const Element& b) {
        a.check(b);
        return {a.f_->add(a.v_, b.v_), a.f_};
    }
    friend Element operator-(const Element& a, const Element& b) {
        a.check(b);
        return {a.f_->sub(a.v_, b.v_), a.f_};
    }
    friend Element operator*(const Element& a, const Element& b) {
        a.check(b);
        return {a.f_->mul(a.v_, b.v_), a.f_};
    }
    friend Element operator/(const Element& a, const Element& b) {
        a.check(b);
        return {a.f_->div(a.v_, b.v_), a.f_};
    }
    Element operator-() const { return {f_->neg(v_), f_}; }
    Element inverse() const { return {f_->inv(v_), f_}; }

    friend bool operator==(const Element& a, const Element& b) {
        return a.f_->same(*b.f_) && a.v_ == b.v_;
    }

  private:
    void check(const Element& other) const {
        if (!f_->same(*other.f_)) fail(ErrorCode::FieldMismatch, "elements from different fields");
    }

    std::uint16_t v_;
    FieldRef f_;
};

} // namespace lnc
