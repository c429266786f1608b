#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hpcx {

/// Exact rational scalar used for all chain-level identities.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Complex number with exact rational real and imaginary parts.
/// Closed under the quarter phases i^k, which is all the exactness the
/// operator families need; generic phases go through std::complex<double>.
struct GaussQ {
    Rational re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(const Rational& r) : re(r), im(0) {}
    GaussQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussQ(int n) : re(n), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussQ operator-() const { return {-re, -im}; }
    GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
    GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { a += b; return a; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { a -= b; return a; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussQ division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    friend bool operator==(const GaussQ& a, const GaussQ& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

/// i^k for k taken mod 4.
inline GaussQ i_power(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GaussQ(Rational(1), Rational(0));
        case 1: return GaussQ(Rational(0), Rational(1));
        case 2: return GaussQ(Rational(-1), Rational(0));
        default: return GaussQ(Rational(0), Rational(-1));
    }
}

// --- uniform scalar helpers used by the templated operator algebra ---

inline Rational conj_scalar(const Rational& x) { return x; }
inline GaussQ conj_scalar(const GaussQ& x) { return {x.re, -x.im}; }
inline std::complex<double> conj_scalar(const std::complex<double>& x) { return std::conj(x); }

inline bool scalar_is_zero(const Rational& x) { return x == 0; }
inline bool scalar_is_zero(const GaussQ& x) { return x.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }

inline std::complex<double> to_cd(const Rational& x) { return {x.get_d(), 0.0}; }
inline std::complex<double> to_cd(const GaussQ& x) { return {x.re.get_d(), x.im.get_d()}; }
inline std::complex<double> to_cd(const std::complex<double>& x) { return x; }

inline GaussQ to_gauss(const Rational& x) { return GaussQ(x); }
inline GaussQ to_gauss(const GaussQ& x) { return x; }

inline double abs_cd(const std::complex<double>& x) { return std::abs(x); }
inline double abs_cd(const Rational& x) { return std::abs(x.get_d()); }
inline double abs_cd(const GaussQ& x) { return std::abs(to_cd(x)); }

inline std::string to_string(const GaussQ& z) {
    if (z.im == 0) return z.re.get_str();
    return z.re.get_str() + (z.im > 0 ? "+" : "") + z.im.get_str() + "i";
}

}  // namespace hpcx
