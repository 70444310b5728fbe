#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torsionlab/errors.hpp"

namespace torsionlab {

// Coefficient field: F_p for p in {2,3,5,7}, or the rationals (p == 0).
struct Field {
    int p = 2;

    bool is_finite() const { return p != 0; }
    std::string name() const;
    static Field parse(const std::string& name);

    friend bool operator==(const Field&, const Field&) = default;
};

// Exact field element. For F_p the value is the canonical residue in [0, p);
// for Q a reduced fraction with positive denominator. Elements carry their
// field tag and mixing fields is an error.
class Scalar {
  public:
    Scalar() = default;  // zero of Q

    static Scalar of(const Field& f, long long value);
    static Scalar fraction(long long num, long long den);  // Q only

    const Field& field() const { return field_; }
    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar inverse() const;
    Scalar operator/(const Scalar& o) const;

    friend bool operator==(const Scalar&, const Scalar&) = default;

    std::string str() const;
    static Scalar parse(const Field& f, const std::string& s);

  private:
    long long num_ = 0;
    long long den_ = 1;
    Field field_{0};

    void normalize();
};

Scalar scalar_zero(const Field& f);
Scalar scalar_one(const Field& f);

// All elements of a finite field, in residue order. Throws for Q.
std::vector<Scalar> field_elements(const Field& f);

// Exact rational number used for chain parameters and breakpoints.
// Always reduced, denominator positive.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d);
    static Rat of(long long n) { return Rat(n, 1); }

    Rat operator+(const Rat& o) const;
    Rat operator-(const Rat& o) const;
    Rat abs() const;

    friend bool operator==(const Rat&, const Rat&) = default;
    bool operator<(const Rat& o) const;
    bool operator<=(const Rat& o) const { return *this == o || *this < o; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    std::string str() const;
    static Rat parse(const std::string& s);
};

}  // namespace torsionlab
