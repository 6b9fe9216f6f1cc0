#include "d2/scalar.hpp"

#include <climits>
#include <numeric>
#include <stdexcept>

namespace d2 {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits(i128 x) { return x > static_cast<i128>(INT64_MIN) && x <= static_cast<i128>(INT64_MAX); }

mpz_class mpz_from(i128 x) {
    bool neg = x < 0;
    u128 u = uabs(x);
    mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

uint64_t powmod(uint64_t b, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

int64_t mod_of(const mpz_class& z, uint32_t p) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return static_cast<int64_t>(r.get_ui());
}

}  // namespace

Scalar::Scalar(long v) : n_(v), d_(1) {
    if (v == LONG_MIN) set_mpq(mpq_class(mpz_class(v)));
}

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    i128 n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
        n /= static_cast<i128>(g);
        d /= static_cast<i128>(g);
    }
    if (fits(n) && fits(d)) {
        n_ = static_cast<int64_t>(n);
        d_ = static_cast<int64_t>(d);
    } else {
        mpq_class q(mpz_from(n), mpz_from(d));
        q.canonicalize();
        set_mpq(q);
    }
}

Scalar::Scalar(const mpq_class& q) { set_mpq(q); }

Scalar Scalar::residue(long long v, uint32_t p) {
    Scalar s;
    s.p_ = p;
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    s.n_ = r;
    return s;
}

Scalar::Scalar(const Scalar& o) : n_(o.n_), d_(o.d_), p_(o.p_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Scalar& Scalar::operator=(const Scalar& o) {
    if (this == &o) return *this;
    n_ = o.n_;
    d_ = o.d_;
    p_ = o.p_;
    if (o.big_)
        big_ = std::make_unique<mpq_class>(*o.big_);
    else
        big_.reset();
    return *this;
}

void Scalar::set_mpq(const mpq_class& q) {
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p() && num.get_si() != LONG_MIN) {
        n_ = num.get_si();
        d_ = den.get_si();
        big_.reset();
    } else {
        n_ = 1;  // marks nonzero for is_zero()
        d_ = 1;
        big_ = std::make_unique<mpq_class>(q);
    }
}

bool Scalar::is_integer() const {
    if (p_) return true;
    if (big_) return big_->get_den() == 1;
    return d_ == 1;
}

mpq_class Scalar::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
}

uint32_t Scalar::common_prime(uint32_t a, uint32_t b) {
    if (a == b || b == 0) return a;
    if (a == 0) return b;
    throw std::invalid_argument("mixing scalars of different characteristic");
}

Scalar Scalar::in_field(uint32_t p) const {
    if (p == p_) return *this;
    if (p == 0) throw std::invalid_argument("cannot lift a residue to the rationals");
    if (p_ != 0) throw std::invalid_argument("mixing scalars of different characteristic");
    int64_t num, den;
    if (big_) {
        num = mod_of(big_->get_num(), p);
        den = mod_of(big_->get_den(), p);
    } else {
        num = ((n_ % static_cast<int64_t>(p)) + p) % p;
        den = d_ % p;
    }
    if (den == 0) throw std::domain_error("denominator vanishes in F_p");
    Scalar s;
    s.p_ = p;
    s.n_ = static_cast<int64_t>(static_cast<uint64_t>(num) * powmod(den, p - 2, p) % p);
    return s;
}

void Scalar::unify(Scalar& o) {
    uint32_t p = common_prime(p_, o.p_);
    if (p_ != p) *this = in_field(p);
    if (o.p_ != p) o = o.in_field(p);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (p_) {
        Scalar s;
        s.p_ = p_;
        s.n_ = static_cast<int64_t>(powmod(n_, p_ - 2, p_));
        return s;
    }
    if (big_) return Scalar(mpq_class(1) / *big_);
    Scalar s;
    if (n_ < 0) {
        s.n_ = -d_;
        s.d_ = -n_;
    } else {
        s.n_ = d_;
        s.d_ = n_;
    }
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    if (p_) {
        s.n_ = n_ ? p_ - n_ : 0;
    } else if (big_) {
        *s.big_ = -*big_;
    } else {
        s.n_ = -n_;
    }
    return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.p_ != p_) {
        Scalar t(o);
        unify(t);
        return *this += t;
    }
    if (p_) {
        n_ += o.n_;
        if (n_ >= static_cast<int64_t>(p_)) n_ -= p_;
        return *this;
    }
    if (!big_ && !o.big_) {
        if (d_ == 1 && o.d_ == 1) {
            int64_t r;
            if (!__builtin_add_overflow(n_, o.n_, &r) && r != INT64_MIN) {
                n_ = r;
                return *this;
            }
        }
        i128 num = static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_;
        i128 den = static_cast<i128>(d_) * o.d_;
        u128 g = gcd128(uabs(num), static_cast<u128>(den));
        if (g > 1) {
            num /= static_cast<i128>(g);
            den /= static_cast<i128>(g);
        }
        if (fits(num) && fits(den)) {
            n_ = static_cast<int64_t>(num);
            d_ = static_cast<int64_t>(den);
            if (n_ == 0) d_ = 1;
        } else {
            mpq_class q(mpz_from(num), mpz_from(den));
            q.canonicalize();
            set_mpq(q);
        }
        return *this;
    }
    set_mpq(to_mpq() + o.to_mpq());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (o.p_ != p_) {
        Scalar t(o);
        unify(t);
        return *this *= t;
    }
    if (p_) {
        n_ = static_cast<int64_t>(static_cast<uint64_t>(n_) * static_cast<uint64_t>(o.n_) % p_);
        return *this;
    }
    if (!big_ && !o.big_) {
        if (n_ == 0 || o.n_ == 0) {
            n_ = 0;
            d_ = 1;
            return *this;
        }
        int64_t g1 = std::gcd(n_, o.d_);
        int64_t g2 = std::gcd(o.n_, d_);
        i128 num = static_cast<i128>(n_ / g1) * (o.n_ / g2);
        i128 den = static_cast<i128>(d_ / g2) * (o.d_ / g1);
        if (fits(num) && fits(den)) {
            n_ = static_cast<int64_t>(num);
            d_ = static_cast<int64_t>(den);
        } else {
            set_mpq(mpq_class(mpz_from(num), mpz_from(den)));
        }
        return *this;
    }
    set_mpq(to_mpq() * o.to_mpq());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.p_ != p_) {
        Scalar t(o);
        unify(t);
        return *this /= t;
    }
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.p_ != b.p_) {
        Scalar x(a), y(b);
        x.unify(y);
        return x == y;
    }
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.to_mpq() == b.to_mpq();
}

std::string Scalar::str() const {
    if (p_) return std::to_string(n_);
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Scalar Scalar::parse(const std::string& s, uint32_t p) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("bad scalar '" + s + "'");
    q.canonicalize();
    Scalar r(q);
    return p ? r.in_field(p) : r;
}

void addmul(Scalar& a, const Scalar& b, const Scalar& c) {
    if (b.is_zero() || c.is_zero()) return;
    Scalar t(b);
    t *= c;
    a += t;
}

}  // namespace d2
