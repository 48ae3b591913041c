#include <gtest/gtest.h>

#include "fanowb/io.hpp"

using namespace fanowb;

TEST(Io, ParseHypersurfaceFile) {
    auto j = Json::parse(R"({"n":3,"d":2,"field":{"prime":7},"form":"x0*x3 - x1*x2",
                            "marked_planes":[[[1,0,0,0],[0,1,0,0]]]})");
    auto h = parse_hypersurface_json(j);
    EXPECT_EQ(h.n, 3);
    EXPECT_EQ(*h.prime, 7u);
    PrimeField f7(7);
    auto x = build_hypersurface(h, f7);
    auto planes = build_marked_planes(h, f7);
    ASSERT_EQ(planes.size(), 1u);
    EXPECT_TRUE(contains(x, planes[0]));
    // round trip
    auto back = parse_hypersurface_json(hypersurface_json(x, planes));
    EXPECT_EQ(build_hypersurface(back, f7).form(), x.form());
    EXPECT_EQ(build_marked_planes(back, f7)[0], planes[0]);
}

TEST(Io, RationalFileAndFractions) {
    auto j = Json::parse(R"({"n":2,"d":2,"field":"QQ","form":"x0^2 - 1/4*x1^2 + x2^2",
                            "marked_planes":[[["1/2",1,0]]]})");
    auto h = parse_hypersurface_json(j);
    EXPECT_FALSE(h.prime);
    RationalField qq;
    auto x = build_hypersurface(h, qq);
    auto p = build_marked_planes(h, qq)[0];
    EXPECT_EQ(to_json(p).dump(), "[[1,2,0]]");
    EXPECT_TRUE(is_zero(x.form().eval(p.row(0))));
    EXPECT_EQ(to_json(Rational(1, 3)), Json("1/3"));
    EXPECT_EQ(to_json(Rational(-5)), Json(-5));
}

TEST(Io, Errors) {
    PrimeField f7(7);
    auto bad_degree = parse_hypersurface_json(Json::parse(R"({"n":3,"d":3,"field":{"prime":7},"form":"x0*x1"})"));
    try {
        build_hypersurface(bad_degree, f7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegreeMismatch);
    }
    EXPECT_THROW(parse_hypersurface_json(Json::parse(R"({"n":3,"d":2})")), Error);
    EXPECT_THROW(parse_hypersurface_json(Json::parse(R"({"n":3,"d":2,"field":"RR","form":"x0^2"})")), Error);
    auto short_row = parse_hypersurface_json(
        Json::parse(R"({"n":3,"d":2,"field":{"prime":7},"form":"x0*x3","marked_planes":[[[1,0]]]})"));
    EXPECT_THROW(build_marked_planes(short_row, f7), Error);
    EXPECT_THROW(read_hypersurface_file("/nonexistent/file.json"), Error);
}

TEST(Io, BigIntegersBecomeStrings) {
    EXPECT_EQ(to_json(BigInt(66)), Json(66));
    BigInt big = BigInt(1) << 80;
    EXPECT_EQ(to_json(big), Json(big.str()));
}

TEST(Io, EnvelopeAndReports) {
    auto rep = threshold_report(3, 3, 1, -1, 1);
    auto j = envelope("bounds report", to_json(rep));
    EXPECT_EQ(j.begin().key(), "schema");
    EXPECT_EQ(j["schema"], kSchema);
    EXPECT_EQ(j["k0"], 4);
    EXPECT_EQ(j.dump(), envelope("bounds report", to_json(threshold_report(3, 3, 1, -1, 1))).dump());
    SplittingType s{{1, 0}, {{-1, 1}, {0, 3}}, true};
    EXPECT_EQ(to_json(s).dump(), R"({"a":[1,0],"h0_table":{"-1":1,"0":3},"free":true})");
}
