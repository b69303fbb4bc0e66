#include "kstab/parse.hpp"

#include <cctype>
#include <sstream>

#include "kstab/errors.hpp"

namespace kstab {

namespace {

class Parser {
public:
    Parser(std::string_view src, const VariableTable& vars) : src_(src), vars_(vars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view src_;
    const VariableTable& vars_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "syntax error at byte " << pos_ << ": " << msg;
        throw InputError(os.str());
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool accept(char c) {
        if (peek_is(c)) { ++pos_; return true; }
        return false;
    }

    Polynomial expr() {
        skip_ws();
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        Polynomial acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (accept('*')) acc *= factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (accept('^')) {
            uint32_t e = parse_uint_literal("exponent must be a non-negative integer literal");
            Polynomial acc = Polynomial::constant(vars_.size(), Rational(1));
            for (uint32_t i = 0; i < e; ++i) acc *= b;
            return acc;
        }
        return b;
    }

    Polynomial base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Polynomial rational_literal() {
        mpz_class num = integer_digits();
        if (accept('/')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("expected denominator digits");
            mpz_class den = integer_digits();
            if (den == 0) fail("zero denominator");
            return Polynomial::constant(vars_.size(), Rational(num, den));
        }
        return Polynomial::constant(vars_.size(), Rational(num, mpz_class(1)));
    }

    mpz_class integer_digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return mpz_class(std::string(src_.substr(start, pos_ - start)), 10);
    }

    uint32_t parse_uint_literal(const char* what) {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail(what);
        mpz_class z = integer_digits();
        if (z > 100000) fail("exponent too large");
        return static_cast<uint32_t>(z.get_ui());
    }

    Polynomial identifier() {
        size_t start = pos_;
        ++pos_;
        while (pos_ < src_.size()) {
            unsigned char c = src_[pos_];
            if (std::isalnum(c) || c == '_') ++pos_;
            else break;
        }
        std::string name(src_.substr(start, pos_ - start));
        auto idx = vars_.index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown variable name '" + name + "'");
        }
        Exponent e(vars_.size(), 0);
        e[*idx] = 1;
        return Polynomial::monomial(vars_.size(), Rational(1), std::move(e));
    }
};

void append_monomial(std::ostream& os, const Exponent& e, const VariableTable& vars, bool coeff_printed) {
    bool first = !coeff_printed;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        first = false;
        os << vars.names[i];
        if (e[i] > 1) os << "^" << e[i];
    }
}

} // namespace

Polynomial parse_polynomial(std::string_view src, const VariableTable& vars) {
    return Parser(src, vars).run();
}

std::string format_polynomial(const Polynomial& f, const VariableTable& vars) {
    if (f.nvars() != vars.size()) throw InputError("polynomial does not match variable table");
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coeff;
        if (first) {
            if (c.sign() < 0) { os << "-"; c = -c; }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        bool constant_term = total_degree(t.exp) == 0;
        bool print_coeff = constant_term || c != Rational(1);
        if (print_coeff) os << c.str();
        append_monomial(os, t.exp, vars, print_coeff);
    }
    return os.str();
}

} // namespace kstab
