#include <doctest.h>

#include <random>

#include "kstab/errors.hpp"
#include "kstab/order.hpp"
#include "kstab/polynomial.hpp"
#include "oracles.hpp"

using namespace kstab;
using namespace kstab::testing;

TEST_SUITE("polynomial") {

TEST_CASE("rational canonical form") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7).is_zero());
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational::from_string("-10/4") == Rational(-5, 2));
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), InputError);
}

TEST_CASE("canonical form: no zero coefficients, no duplicate exponents") {
    std::vector<Term> terms{
        {Rational(1), {1, 0}}, {Rational(2), {0, 1}}, {Rational(-1), {1, 0}},
        {Rational(0), {2, 2}},
    };
    Polynomial p = Polynomial::from_terms(2, std::move(terms));
    CHECK(p.term_count() == 1);
    CHECK(p.terms()[0].coeff == Rational(2));
}

TEST_CASE("grevlex storage order is strictly decreasing") {
    // y1*y2 precedes y3^2 in the canonical print order
    Exponent a{0, 1, 1, 0}, b{0, 0, 0, 2};
    CHECK(grevlex_cmp(a, b) > 0);
    CHECK(grevlex_cmp(b, a) < 0);
    CHECK(grevlex_cmp(a, a) == 0);
}

TEST_CASE("arithmetic identities from examples") {
    auto s = c3_setup(2);
    Polynomial f = P("y1*y2 - y3^2", *s);
    SUBCASE("f + 0 = f") { CHECK(f + Polynomial::zero(4) == f); }
    SUBCASE("difference of squares") {
        CHECK(P("(y1 - y2)*(y1 + y2)", *s) == P("y1^2 - y2^2", *s));
    }
    SUBCASE("term-by-term product") {
        // oracle: multiply each term of f by y3 and re-canonicalize
        std::vector<Term> expect;
        for (const auto& t : f.terms()) {
            Exponent e = t.exp;
            e[3] += 1;
            expect.push_back(Term{t.coeff, e});
        }
        CHECK(f * P("y3", *s) == Polynomial::from_terms(4, std::move(expect)));
        CHECK(f * P("y3", *s) == P("y1*y2*y3 - y3^3", *s));
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial a = random_polynomial(rng, 3, 6, 3);
        Polynomial b = random_polynomial(rng, 3, 6, 3);
        Polynomial c = random_polynomial(rng, 3, 6, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        // canonical-form invariants on the products
        const Polynomial prod = a * b;
        for (size_t i = 0; i < prod.term_count(); ++i) {
            CHECK(!prod.terms()[i].coeff.is_zero());
            if (i + 1 < prod.term_count())
                CHECK(grevlex_cmp(prod.terms()[i].exp, prod.terms()[i + 1].exp) > 0);
        }
    }
}

TEST_CASE("x_degree_components") {
    auto s = c1_setup();
    SUBCASE("splits by projective degree") {
        Polynomial f = P("x0^2*y1 + x0", *s);
        auto parts = x_degree_components(f, s->vars);
        REQUIRE(parts.size() == 2);
        CHECK(parts.at(2) == P("x0^2*y1", *s));
        CHECK(parts.at(1) == P("x0", *s));
        Polynomial sum = Polynomial::zero(2);
        for (const auto& [deg, comp] : parts) sum += comp;
        CHECK(sum == f);
    }
    SUBCASE("pure affine is degree 0") {
        auto parts = x_degree_components(P("y1^2", *s), s->vars);
        REQUIRE(parts.size() == 1);
        CHECK(parts.count(0) == 1);
    }
    SUBCASE("zero polynomial gives empty map") {
        CHECK(x_degree_components(Polynomial::zero(2), s->vars).empty());
    }
}

TEST_CASE("initial forms") {
    auto s = c3_setup(2);
    Polynomial f = P("y1*y2 - y3^2", *s);
    CHECK(initial_form(f, {0, 0, 0, 1}) == P("-y3^2", *s));
    CHECK(initial_form(f, {0, 1, 1, 0}) == P("y1*y2", *s));
    CHECK(initial_form(f, {0, 1, 1, 1}) == f); // rho-homogeneous
}

TEST_CASE("variable table validation") {
    CHECK_THROWS_AS(VariableTable::make({"x0", "x0"}, {VarKind::Projective, VarKind::Affine}),
                    InputError);
    CHECK_THROWS_AS(VariableTable::make({"1x"}, {VarKind::Projective}), InputError);
    CHECK_THROWS_AS(VariableTable::make({"y"}, {VarKind::Affine}), InputError); // no projective
}

} // TEST_SUITE
