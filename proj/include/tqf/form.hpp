// Integral ternary quadratic forms in the Gaussian (matrix-integral) convention:
// F(x) = f11 x1^2 + f22 x2^2 + f33 x3^2 + 2 f12 x1 x2 + 2 f13 x1 x3 + 2 f23 x2 x3.
#ifndef TQF_FORM_HH
#define TQF_FORM_HH

#include "tqf/intutil.hpp"

#include <array>
#include <iosfwd>

namespace tqf {

struct TernaryForm {
    // symmetric Gram matrix, row-major
    std::array<ZZ, 9> g;

    TernaryForm() { g.fill(ZZ(0)); }
    TernaryForm(ZZ f11, ZZ f22, ZZ f33, ZZ f12, ZZ f13, ZZ f23)
    {
        g = {f11, f12, f13, f12, f22, f23, f13, f23, f33};
    }
    static TernaryForm diag(ZZ a, ZZ b, ZZ c) { return TernaryForm(a, b, c, 0, 0, 0); }
    static TernaryForm from_gram(const std::array<ZZ, 9>& m);

    const ZZ& at(int i, int j) const { return g[3 * i + j]; }
    ZZ& at(int i, int j) { return g[3 * i + j]; }

    ZZ determinant() const;
    // gcd of the nine entries; throws on the zero form
    ZZ content() const;
    bool is_primitive() const { return content() == 1; }
    ZZ evaluate(const ZZ& x, const ZZ& y, const ZZ& z) const;

    TernaryForm negated() const;
    TernaryForm scaled(const ZZ& c) const;

    bool operator==(const TernaryForm& o) const { return g == o.g; }

    // "f11 f22 f33 f12 f13 f23"
    std::string to_line() const;
    static TernaryForm parse_line(const std::string& line);
};

std::ostream& operator<<(std::ostream& os, const TernaryForm& f);

struct UnimodularMap {
    std::array<ZZ, 9> m; // row-major, det = +-1

    UnimodularMap() { m = {ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1), ZZ(0), ZZ(0), ZZ(0), ZZ(1)}; }
    explicit UnimodularMap(const std::array<ZZ, 9>& a);

    const ZZ& at(int i, int j) const { return m[3 * i + j]; }
    ZZ det() const;
    UnimodularMap mul(const UnimodularMap& o) const;
};

// u^T gram u
TernaryForm transform(const TernaryForm& f, const UnimodularMap& u);

struct Signature {
    int pos = 0, neg = 0, zero = 0;
    bool indefinite_nonsingular() const { return zero == 0 && pos > 0 && neg > 0; }
    bool operator==(const Signature& o) const
    {
        return pos == o.pos && neg == o.neg && zero == o.zero;
    }
};

// exact inertia counts (no floating point)
Signature signature(const TernaryForm& f);

// flips sign when det < 0 so that det > 0; returns true if flipped
bool sign_normalize(TernaryForm& f);

// deterministic unimodular change of basis making the leading principal
// minors D1, D2 nonzero; requires det(f) != 0
TernaryForm fix_leading_minors(const TernaryForm& f);

} // namespace tqf

#endif
