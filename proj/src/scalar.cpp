#include "torsionlab/scalar.hpp"

#include <numeric>

namespace torsionlab {

namespace {

bool is_supported_prime(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

long long checked_narrow(__int128 v, const char* what) {
    if (v > INT64_MAX / 2 || v < -(INT64_MAX / 2))
        throw error(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

}  // namespace

std::string Field::name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }

Field Field::parse(const std::string& name) {
    if (name == "Q" || name == "QQ") return Field{0};
    if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
        int p = 0;
        try {
            p = std::stoi(name.substr(1));
        } catch (...) {
            throw parse_error("unrecognized field: " + name);
        }
        if (is_supported_prime(p)) return Field{p};
    }
    throw parse_error("unsupported field: " + name + " (expected F2, F3, F5, F7 or Q)");
}

void Scalar::normalize() {
    if (field_.p != 0) {
        den_ = 1;
        num_ %= field_.p;
        if (num_ < 0) num_ += field_.p;
        return;
    }
    if (den_ == 0) throw error("zero denominator");
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Scalar Scalar::of(const Field& f, long long value) {
    if (f.p != 0 && !is_supported_prime(f.p)) throw error("unsupported field characteristic");
    Scalar s;
    s.field_ = f;
    s.num_ = value;
    s.den_ = 1;
    s.normalize();
    return s;
}

Scalar Scalar::fraction(long long num, long long den) {
    Scalar s;
    s.field_ = Field{0};
    s.num_ = num;
    s.den_ = den;
    s.normalize();
    return s;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    r.normalize();
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (field_ != o.field_) throw error("field mismatch in scalar arithmetic");
    Scalar r;
    r.field_ = field_;
    if (field_.p != 0) {
        r.num_ = num_ + o.num_;
    } else {
        __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
        __int128 d = static_cast<__int128>(den_) * o.den_;
        r.num_ = checked_narrow(n, "+");
        r.den_ = checked_narrow(d, "+");
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (field_ != o.field_) throw error("field mismatch in scalar arithmetic");
    Scalar r;
    r.field_ = field_;
    if (field_.p != 0) {
        r.num_ = num_ * o.num_;
    } else {
        r.num_ = checked_narrow(static_cast<__int128>(num_) * o.num_, "*");
        r.den_ = checked_narrow(static_cast<__int128>(den_) * o.den_, "*");
    }
    r.normalize();
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw error("inverse of zero");
    Scalar r;
    r.field_ = field_;
    if (field_.p != 0) {
        for (long long x = 1; x < field_.p; ++x)
            if ((x * num_) % field_.p == 1) {
                r.num_ = x;
                break;
            }
    } else {
        r.num_ = den_;
        r.den_ = num_;
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

std::string Scalar::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::parse(const Field& f, const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Scalar::of(f, std::stoll(s));
        if (f.p != 0) throw parse_error("fraction literal over a finite field: " + s);
        return Scalar::fraction(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const parse_error&) {
        throw;
    } catch (...) {
        throw parse_error("bad scalar literal: " + s);
    }
}

Scalar scalar_zero(const Field& f) { return Scalar::of(f, 0); }
Scalar scalar_one(const Field& f) { return Scalar::of(f, 1); }

std::vector<Scalar> field_elements(const Field& f) {
    if (!f.is_finite()) throw size_error("cannot enumerate the rationals");
    std::vector<Scalar> out;
    out.reserve(f.p);
    for (int v = 0; v < f.p; ++v) out.push_back(Scalar::of(f, v));
    return out;
}

Rat::Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rat Rat::operator+(const Rat& o) const {
    __int128 n = static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den;
    __int128 d = static_cast<__int128>(den) * o.den;
    return Rat(checked_narrow(n, "Rat+"), checked_narrow(d, "Rat+"));
}

Rat Rat::operator-(const Rat& o) const { return *this + Rat(-o.num, o.den); }

Rat Rat::abs() const { return num < 0 ? Rat(-num, den) : *this; }

bool Rat::operator<(const Rat& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s), 1);
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (...) {
        throw parse_error("bad rational literal: " + s);
    }
}

}  // namespace torsionlab
