#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace d2 {

// Exact scalar: a rational number (p == 0) or a residue mod a prime p.
// Rationals stay in a pair of int64 while they fit and spill to mpq_class otherwise.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    Scalar(long num, long den);
    explicit Scalar(const mpq_class& q);
    // residue constructor; v is reduced mod p
    static Scalar residue(long long v, uint32_t p);

    Scalar(const Scalar& o);
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o);
    Scalar& operator=(Scalar&&) noexcept = default;

    uint32_t prime() const { return p_; }
    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;

    // value in the given field; rationals are mapped into F_p through num * den^-1
    Scalar in_field(uint32_t p) const;
    mpq_class to_mpq() const;

    Scalar inverse() const;
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // "p/q" with q omitted when 1; residues print as integers in [0,p)
    std::string str() const;
    static Scalar parse(const std::string& s, uint32_t p = 0);

private:
    int64_t n_ = 0;
    int64_t d_ = 1;
    uint32_t p_ = 0;
    std::unique_ptr<mpq_class> big_;

    void set_mpq(const mpq_class& q);
    void unify(Scalar& other);
    static uint32_t common_prime(uint32_t a, uint32_t b);
};

// a += b * c, the inner-loop operation of every elimination
void addmul(Scalar& a, const Scalar& b, const Scalar& c);

}  // namespace d2
