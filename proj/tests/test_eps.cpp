#include <random>

#include "doctest.h"
#include "testutil.hpp"

using namespace dkb;
using dkbtest::random_nonzero_poly;
using dkbtest::random_poly;
using dkbtest::random_ratio;
using dkbtest::random_tame_ratio;

TEST_CASE("poly arithmetic") {
    EpsPoly eps = EpsPoly::eps();
    EpsPoly one(1);

    CHECK((eps + one) == (one + eps));
    CHECK((eps + one).str() == "1 + e^1");

    // (1+e)(1-e) = 1 - e^2
    EpsPoly prod = (one + eps) * (one - eps);
    CHECK(prod == one - eps * eps);

    EpsPoly x = EpsPoly::term(Rat(1, 2), Rat(3)) + one;
    CHECK((x * EpsPoly()).is_zero());

    CHECK_THROWS_AS(EpsPoly::term(Rat(-1), Rat(1)), Error);
}

TEST_CASE("ratio_compare") {
    EpsRatio eps = EpsRatio::eps_power(1);
    CHECK(compare(eps, EpsRatio(Rat(1, 2))) < 0);
    CHECK(compare(eps * EpsRatio(2), eps) > 0);

    // (1 - e^2)/(1 - e) = 1 + e
    EpsRatio lhs(EpsPoly(1) - EpsPoly::eps() * EpsPoly::eps(), EpsPoly(1) - EpsPoly::eps());
    EpsRatio rhs = EpsRatio(1) + eps;
    CHECK(compare(lhs, rhs) == 0);
    CHECK(lhs == rhs);
}

TEST_CASE("much_smaller") {
    EpsRatio zero;
    EpsRatio one(1);
    EpsRatio eps = EpsRatio::eps_power(1);
    EpsRatio sqrt_eps = EpsRatio::eps_power(Rat(1, 2));

    CHECK(much_smaller(zero, one));
    CHECK_FALSE(much_smaller(zero, zero));
    CHECK(much_smaller(eps, sqrt_eps));
    CHECK(much_smaller(sqrt_eps, one));
    CHECK_FALSE(much_smaller(eps * EpsRatio(3), eps));
    CHECK_FALSE(much_smaller(eps, eps * EpsRatio(3)));
    CHECK_THROWS_AS(much_smaller(-one, one), NegativeOperand);
}

TEST_CASE("magnitude") {
    CHECK(EpsRatio::eps_power(Rat(3, 2)).magnitude() == ExtRat(Rat(3, 2)));

    // (2e + e^2)/(1 + e) has order 1
    EpsRatio x(EpsPoly::term(1, 2) + EpsPoly::term(2, 1), EpsPoly(1) + EpsPoly::eps());
    CHECK(x.magnitude() == ExtRat(Rat(1)));

    CHECK(EpsRatio().magnitude().is_infinite());
    CHECK_THROWS_AS((-EpsRatio(1)).magnitude(), NegativeOperand);
}

TEST_CASE("eval_numeric") {
    CHECK(EpsRatio::eps_power(1).eval(Rat(1, 2), 1) == Rat(1, 2));
    CHECK(EpsRatio::eps_power(Rat(1, 2)).eval(Rat(1, 4), 2) == Rat(1, 4));

    EpsRatio v(EpsPoly(1) + EpsPoly::eps(), EpsPoly(2));
    CHECK(v.eval(Rat(1, 8), 1) == Rat(9, 16));

    CHECK_THROWS_AS(EpsRatio::eps_power(Rat(1, 2)).eval(Rat(1, 2), 1), RootMismatch);
    CHECK(EpsRatio::eps_power(Rat(1, 3)).eval(Rat(1, 2), 6) == Rat(1, 4));
}

TEST_CASE("rendering and parsing") {
    EpsRatio sample(EpsPoly(1) + EpsPoly::term(2, 2), EpsPoly::term(Rat(1, 2), 3));
    CHECK(sample.str() == "(1 + 2*e^2)/(3*e^1/2)");
    CHECK(EpsRatio::parse(sample.str()) == sample);
    CHECK(EpsRatio::parse("(1 + 2*e^2)/3*e^1/2") == sample);

    CHECK(EpsRatio::parse("1/2") == EpsRatio(Rat(1, 2)));
    CHECK(EpsRatio::parse("e^1") == EpsRatio::eps_power(1));
    CHECK(EpsRatio::parse("(e^1)/2") == EpsRatio(EpsPoly::eps(), EpsPoly(2)));
    CHECK(EpsRatio::parse("-2*e^3/2 + 1") == EpsRatio(EpsPoly(1) - EpsPoly::term(Rat(3, 2), 2)));
    CHECK_THROWS_AS(EpsRatio::parse("1 +"), ParseError);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        EpsRatio r = random_ratio(rng);
        CHECK(EpsRatio::parse(r.str()) == r);
    }
}

TEST_CASE("ordered-field laws on random values") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 400; ++i) {
        EpsRatio a = random_ratio(rng), b = random_ratio(rng), c = random_ratio(rng);

        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
        CHECK((a - a).is_zero());

        // total order compatible with + and with * by positives
        int ab = compare(a, b);
        CHECK(compare(a + c, b + c) == ab);
        if (c.sign() > 0) CHECK(compare(a * c, b * c) == ab);
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("much_smaller is a strict order tied to magnitude") {
    std::mt19937_64 rng(5);
    auto positive = [&]() {
        for (;;) {
            EpsRatio r = random_ratio(rng);
            if (r.sign() > 0) return r;
        }
    };
    for (int i = 0; i < 200; ++i) {
        EpsRatio a = positive(), b = positive(), c = positive();
        CHECK_FALSE(much_smaller(a, a));
        if (much_smaller(a, b)) {
            CHECK(a < b);
            CHECK(a.magnitude() > b.magnitude());
            if (much_smaller(b, c)) CHECK(much_smaller(a, c));
        }
        // magnitude laws
        CHECK((a * b).magnitude() == a.magnitude() + b.magnitude());
        ExtRat lo = min(a.magnitude(), b.magnitude());
        CHECK((a + b).magnitude() >= lo);
        if (a.magnitude() != b.magnitude()) CHECK((a + b).magnitude() == lo);
    }
}

TEST_CASE("symbolic comparison agrees with evaluation at small u") {
    std::mt19937_64 rng(9);
    const Rat us[] = {Rat(1, 1 << 10), Rat(1, 1 << 20), Rat(mpz_class(1), mpz_class(1) << 40)};
    for (int i = 0; i < 300; ++i) {
        EpsRatio a = random_tame_ratio(rng), b = random_tame_ratio(rng);
        int c = compare(a, b);
        if (c == 0) continue;
        for (const Rat& u : us) {
            Rat va = a.eval(u, 1), vb = b.eval(u, 1);
            CHECK(((va < vb) ? -1 : (va > vb ? 1 : 0)) == c);
        }
    }
}
