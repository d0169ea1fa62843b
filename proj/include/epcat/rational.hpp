#pragma once

#include <cmath>
#include <complex>
#include <gmpxx.h>
#include <limits>
#include <stdexcept>
#include <string>

namespace epcat {

using Rat = mpq_class;
using cplx = std::complex<double>;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

/// Nearest double; mpq_get_d alone truncates toward zero, one ulp shy of the
/// value a decimal literal would produce.
inline double to_double(const Rat& r) {
    double t = r.get_d();
    double next = std::nextafter(t, r < 0 ? -std::numeric_limits<double>::infinity()
                                          : std::numeric_limits<double>::infinity());
    if (!std::isfinite(next)) return t;
    Rat err_t = abs(r - Rat(t));
    Rat err_n = abs(r - Rat(next));
    return err_n < err_t ? next : t;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses a decimal literal ("0.28", "-1.5e-3", "7/25") into the exact
/// rational it denotes. Throws std::invalid_argument on malformed input.
inline Rat rat_from_decimal(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("not a number: '" + s + "'"); };
    if (s.empty()) bad();
    if (s.find('/') != std::string::npos) {
        Rat r;
        if (r.set_str(s, 10) != 0) bad();
        r.canonicalize();
        return r;
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
    std::string digits;
    long frac_digits = 0, exponent = 0;
    bool any = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits += c;
            if (seen_dot) ++frac_digits;
            any = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && any) {
            exponent = std::stol(s.substr(i + 1));
            i = s.size() - 1;
        } else {
            bad();
        }
    }
    if (!any) bad();
    mpz_class num(digits.empty() ? "0" : digits, 10);
    if (neg) num = -num;
    long p10 = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(p10 < 0 ? -p10 : p10));
    Rat r = p10 >= 0 ? Rat(num * scale) : Rat(num, scale);
    r.canonicalize();
    return r;
}

/// Exact conversion; every finite double is a dyadic rational.
inline Rat rat_from_double(double x) {
    Rat r(x);
    r.canonicalize();
    return r;
}

/// Gaussian rational re + im*i, the exact scalar for matrices with
/// imaginary gain/loss entries.
struct GaussRat {
    Rat re, im;

    GaussRat() = default;
    GaussRat(const Rat& r) : re(r) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r) {}

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n = b.re * b.re + b.im * b.im;
        if (sgn(n) == 0) throw std::domain_error("GaussRat division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
    GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
    GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline GaussRat gauss_i() { return {Rat(0), Rat(1)}; }
inline GaussRat conj(const GaussRat& z) { return {z.re, -z.im}; }
inline bool is_zero(const GaussRat& z) { return is_zero(z.re) && is_zero(z.im); }
inline bool is_real(const GaussRat& z) { return is_zero(z.im); }
inline cplx to_complex(const GaussRat& z) { return {to_double(z.re), to_double(z.im)}; }

inline GaussRat gauss_from_complex(cplx z) {
    return {rat_from_double(z.real()), rat_from_double(z.imag())};
}

}  // namespace epcat
