#include "kstab/rational.hpp"

#include <ostream>

#include "kstab/errors.hpp"

namespace kstab {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    v_ = mpq_class(num);
    v_ /= mpq_class(den);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal: '" + s + "'");
    if (q.get_den() == 0) throw InputError("rational with zero denominator: '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

Rational Rational::from_double(double d) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

Rational dot(const std::vector<Rational>& a, const std::vector<long long>& b) {
    Rational s;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * Rational(static_cast<long>(b[i]));
    return s;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s;
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace kstab
