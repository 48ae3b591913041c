#include <gtest/gtest.h>

#include "fanowb/form.hpp"
#include "fanowb/matrix.hpp"
#include "fanowb/random.hpp"

using namespace fanowb;

namespace {

const PrimeField F7(7);
const RationalField QQ;

template <class F>
Form<F> parse(const F& f, const std::string& s, int nvars) {
    return parse_form(s, nvars, f);
}

}  // namespace

TEST(PrimeField, RejectsCompositeAndTwo) {
    EXPECT_THROW(PrimeField(4), Error);
    EXPECT_THROW(PrimeField(2), Error);
    EXPECT_THROW(PrimeField(1), Error);
    try {
        PrimeField bad(4);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotPrime);
        EXPECT_NE(std::string(e.what()).find("4 is not prime"), std::string::npos);
    }
}

TEST(PrimeField, FieldAxiomsOnRandomSamples) {
    for (std::uint64_t p : {3ull, 7ull, 101ull, 65521ull, 2147483647ull}) {
        PrimeField f(p);
        Rng rng(p);
        for (int i = 0; i < 500; ++i) {
            Fp a = rng.element(f), b = rng.element(f), c = rng.element(f);
            EXPECT_EQ(a + b, b + a);
            EXPECT_EQ(a * (b + c), a * b + a * c);
            EXPECT_EQ((a - b) + b, a);
            EXPECT_EQ(a + (-a), f.zero());
            if (!is_zero(a)) EXPECT_EQ(a * inverse(a), f.one());
        }
    }
}

TEST(PrimeField, SymmetricRepresentative) {
    EXPECT_EQ(F7.from_int(6).symmetric(), -1);
    EXPECT_EQ(F7.from_int(3).symmetric(), 3);
    EXPECT_EQ(F7.from_int(4).symmetric(), -3);
    EXPECT_EQ(F7.from_int(-15).v, 6u);
}

TEST(Parse, FermatCubicOverF7) {
    auto f = parse(F7, "x0^3+x1^3+x2^3+x3^3", 4);
    EXPECT_EQ(f.degree(), 3);
    EXPECT_EQ(f.num_terms(), 4u);
    EXPECT_EQ(f.render(), "x0^3 + x1^3 + x2^3 + x3^3");
}

TEST(Parse, SmoothQuadricOverQ) {
    auto f = parse(QQ, "x0*x3 - x1*x2", 4);
    EXPECT_EQ(f.num_terms(), 2u);
    EXPECT_EQ(f.render(), "x0*x3 - x1*x2");
}

TEST(Parse, Errors) {
    try {
        parse_form("x0^2 + x1", 2, QQ);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonHomogeneous);
    }
    try {
        parse_form("x0^2 + x5^2", 3, QQ);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownVariable);
    }
    try {
        parse_form("x0*x1 - x1*x0", 3, QQ);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
    }
    auto z = parse_form("x0*x1 - x1*x0", 3, QQ, 2);
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), 2);
    EXPECT_THROW(parse_form("x0 +", 2, QQ), Error);
    EXPECT_THROW(parse_form("1/0*x0", 2, QQ), Error);
}

TEST(Parse, RationalCoefficientsAndReduction) {
    auto f = parse(QQ, "1/2*x0^2 - 3/4*x0*x1 + 5*x1^2", 2);
    EXPECT_EQ(f.render(), "1/2*x0^2 - 3/4*x0*x1 + 5*x1^2");
    auto g = parse(F7, "1/2*x0^2 - 3/4*x0*x1 + 5*x1^2", 2);
    // 1/2 = 4, -3/4 = -3*2 = 1, 5 = -2 mod 7
    EXPECT_EQ(g.render(), "-3*x0^2 + x0*x1 - 2*x1^2");
}

TEST(Parse, RenderRoundTripIsIdentity) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Form<PrimeField> f(F7, 4, 3);
        for (const auto& e : all_exponents(4, 3))
            if (rng.below(3) == 0) f.add_term(e, rng.element(F7));
        if (f.is_zero()) continue;
        EXPECT_EQ(parse_form(f.render(), 4, F7), f);
    }
}

TEST(Eval, Examples) {
    auto fermat = parse(F7, "x0^3+x1^3+x2^3+x3^3", 4);
    std::vector<Fp> pt{F7.from_int(1), F7.from_int(-1), F7.zero(), F7.zero()};
    EXPECT_TRUE(is_zero(fermat.eval(pt)));
    auto q = parse(QQ, "x0*x3 - x1*x2", 4);
    std::vector<Rational> qp{1, 2, 3, 6};
    EXPECT_EQ(q.eval(qp), 0);
    PrimeField f5(5);
    auto sq = parse(f5, "x0^2", 1);
    std::vector<Fp> three{f5.from_int(3)};
    EXPECT_EQ(sq.eval(three), f5.from_int(4));
    std::vector<Fp> zero(4, F7.zero());
    EXPECT_TRUE(is_zero(fermat.eval(zero)));
}

TEST(Substitute, QuadricAlongPencilIsDivisibleByT) {
    // variables of the image space: x0, x1, t (index 2); a2 = 2, a3 = 5
    auto f = parse(QQ, "x0*x3 - x1*x2", 4);
    std::vector<Form<RationalField>> images{
        Form<RationalField>::variable(QQ, 3, 0), Form<RationalField>::variable(QQ, 3, 1),
        Form<RationalField>::variable(QQ, 3, 2).scaled(2), Form<RationalField>::variable(QQ, 3, 2).scaled(5)};
    auto r = f.substitute(images);
    for (const auto& [e, c] : r.terms()) EXPECT_GE(e[2], 1);
    // hand expansion: x0*(5t) - x1*(2t) = t*(5*x0 - 2*x1)
    EXPECT_EQ(r, parse(QQ, "5*x0*x2 - 2*x1*x2", 3));
}

TEST(Substitute, IdentityAndSquare) {
    auto f = parse(F7, "x0^3 + 2*x1*x2^2 - x3^3", 4);
    std::vector<Form<PrimeField>> id;
    for (int i = 0; i < 4; ++i) id.push_back(Form<PrimeField>::variable(F7, 4, i));
    EXPECT_EQ(f.substitute(id), f);

    auto sq = parse(QQ, "x0^2", 1);
    std::vector<Form<RationalField>> img{parse(QQ, "x1 + x2", 3)};
    EXPECT_EQ(sq.substitute(img), parse(QQ, "x1^2 + 2*x1*x2 + x2^2", 3));
}

TEST(Substitute, DegreeMismatchRejected) {
    auto f = parse(QQ, "x0*x1", 2);
    std::vector<Form<RationalField>> img{parse(QQ, "x0", 2), parse(QQ, "x0*x1", 2)};
    try {
        f.substitute(img);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
    }
}

TEST(Substitute, CommutesWithEvaluation) {
    PrimeField f11(11);
    Rng rng(2024);
    for (int form = 0; form < 5; ++form) {
        Form<PrimeField> f(f11, 4, 3);
        for (const auto& e : all_exponents(4, 3)) f.add_term(e, rng.element(f11));
        std::vector<Form<PrimeField>> images;
        for (int i = 0; i < 4; ++i) {
            Form<PrimeField> g(f11, 3, 2);
            for (const auto& e : all_exponents(3, 2)) g.add_term(e, rng.element(f11));
            images.push_back(g);
        }
        auto comp = f.substitute(images);
        EXPECT_EQ(comp.degree(), 6);
        for (int k = 0; k < 100; ++k) {
            auto t = rng.vector(f11, 3);
            std::vector<Fp> img;
            for (const auto& g : images) img.push_back(g.eval(t));
            EXPECT_EQ(comp.eval(t), f.eval(img));
        }
    }
}

TEST(Derivatives, Examples) {
    auto q = parse(QQ, "x0*x3 - x1*x2", 4);
    auto d = partial_derivatives(q);
    EXPECT_EQ(d[0], parse(QQ, "x3", 4));
    EXPECT_EQ(d[1], parse(QQ, "-x2", 4));
    EXPECT_EQ(d[2], parse(QQ, "-x1", 4));
    EXPECT_EQ(d[3], parse(QQ, "x0", 4));
    auto fermat = parse(F7, "x0^3+x1^3+x2^3+x3^3", 4);
    auto fd = partial_derivatives(fermat);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(fd[i], Form<PrimeField>::variable(F7, 4, i).pow(2).scaled(F7.from_int(3)));
}

TEST(Derivatives, CharacteristicTooSmall) {
    PrimeField f3(3);
    auto f = parse(f3, "x0^3 + x1^3 + x2^3", 3);
    try {
        partial_derivatives(f);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::CharacteristicTooSmall);
    }
}

template <class F>
void check_euler(const Form<F>& f) {
    auto d = partial_derivatives(f);
    Form<F> s(f.field(), f.nvars(), f.degree());
    for (int i = 0; i < f.nvars(); ++i) s += Form<F>::variable(f.field(), f.nvars(), i) * d[i];
    EXPECT_EQ(s, f.scaled(f.field().from_int(f.degree())));
}

TEST(Derivatives, EulerRelationOnRandomForms) {
    Rng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int nv = 2 + static_cast<int>(rng.below(4));
        int deg = 1 + static_cast<int>(rng.below(5));
        Form<PrimeField> f(F7, nv, deg);
        for (const auto& e : all_exponents(nv, deg)) f.add_term(e, rng.element(F7));
        if (!f.is_zero()) check_euler(f);
        Form<RationalField> g(QQ, nv, deg);
        for (const auto& e : all_exponents(nv, deg)) g.add_term(e, rng.element(QQ));
        if (!g.is_zero()) check_euler(g);
    }
}

TEST(Nullspace, Examples) {
    auto id = Matrix<RationalField>::identity(QQ, 3);
    auto r1 = nullspace_rank(id);
    EXPECT_EQ(r1.rank, 3);
    EXPECT_TRUE(r1.basis.empty());

    Matrix<PrimeField> z(F7, 2, 5);
    auto r2 = nullspace_rank(z);
    EXPECT_EQ(r2.rank, 0);
    EXPECT_EQ(r2.basis.size(), 5u);

    auto m = Matrix<RationalField>::from_rows(QQ, {{1, 2}, {2, 4}});
    auto r3 = nullspace_rank(m);
    EXPECT_EQ(r3.rank, 1);
    ASSERT_EQ(r3.basis.size(), 1u);
    EXPECT_EQ(r3.basis[0], (std::vector<Rational>{-2, 1}));
}

TEST(Nullspace, RankNullityAndKernelProperty) {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        int r = 1 + static_cast<int>(rng.below(6)), c = 1 + static_cast<int>(rng.below(7));
        Matrix<PrimeField> m(F7, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng.below(3)) m(i, j) = rng.element(F7);
        auto res = nullspace_rank(m);
        EXPECT_EQ(res.rank + static_cast<int>(res.basis.size()), c);
        for (const auto& v : res.basis)
            for (const auto& x : m.apply(v)) EXPECT_TRUE(is_zero(x));
    }
    for (int trial = 0; trial < 50; ++trial) {
        int r = 1 + static_cast<int>(rng.below(5)), c = 1 + static_cast<int>(rng.below(5));
        Matrix<RationalField> m(QQ, r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = Rational(static_cast<std::int64_t>(rng.below(7)) - 3, 1 + rng.below(4));
        auto res = nullspace_rank(m);
        EXPECT_EQ(res.rank + static_cast<int>(res.basis.size()), c);
        for (const auto& v : res.basis)
            for (const auto& x : m.apply(v)) EXPECT_EQ(x, 0);
    }
}

TEST(Matrix, SolveAndInverse) {
    auto m = Matrix<RationalField>::from_rows(QQ, {{2, 1}, {1, 3}});
    std::vector<Rational> b{3, 5};
    auto x = solve(m, std::span<const Rational>(b));
    ASSERT_TRUE(x);
    EXPECT_EQ(m.apply(*x), b);
    auto inv = m.inverse_matrix();
    ASSERT_TRUE(inv);
    EXPECT_EQ(m * *inv, Matrix<RationalField>::identity(QQ, 2));
    auto sing = Matrix<RationalField>::from_rows(QQ, {{1, 2}, {2, 4}});
    EXPECT_FALSE(sing.inverse_matrix());
    std::vector<Rational> bad{1, 0};
    EXPECT_FALSE(solve(sing, std::span<const Rational>(bad)));
}
