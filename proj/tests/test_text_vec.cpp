#include <doctest.h>

#include <random>

#include "kgex/error.hpp"
#include "kgex/text.hpp"
#include "kgex/vec.hpp"

using namespace kgex;

TEST_CASE("feature normalization folds case and trims") {
    CHECK(normalize_feature("  Plot  ") == "plot");
    CHECK(normalize_feature("Warm   HUMOR") == "warm humor");
    CHECK(normalize_feature("\tgentle healing\n") == "gentle healing");
    CHECK(normalize_feature("") == "");
    CHECK(normalize_feature("   ") == "");
}

TEST_CASE("split_whitespace") {
    CHECK(split_whitespace("a b  c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_whitespace("  ") == std::vector<std::string>{});
}

TEST_CASE("cosine basics") {
    CHECK(vec::cosine(Vec{1, 0}, Vec{1, 0}) == doctest::Approx(1.0));
    CHECK(vec::cosine(Vec{1, 0}, Vec{0, 1}) == doctest::Approx(0.0));
    CHECK(vec::cosine(Vec{1, 0}, Vec{-1, 0}) == doctest::Approx(-1.0));
}

TEST_CASE("cosine zero-norm convention") {
    CHECK(vec::cosine(Vec{0, 0}, Vec{1, 2}) == 0.0);
    CHECK(vec::cosine(Vec{1e-13, 0}, Vec{1, 2}) == 0.0);
}

TEST_CASE("cosine dimension mismatch throws") {
    CHECK_THROWS_AS(vec::cosine(Vec{1, 0}, Vec{1, 0, 0}), Error);
}

TEST_CASE("cosine positive-scale invariance") {
    std::mt19937_64 rng(7);
    auto rnd = [&] { return (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0; };
    for (int trial = 0; trial < 50; ++trial) {
        Vec a(8), b(8);
        for (auto& x : a) x = rnd();
        for (auto& x : b) x = rnd();
        double c = std::exp(rnd() * 5.0);
        Vec ca = a;
        vec::scale_inplace(ca, c);
        CHECK(vec::cosine(ca, b) == doctest::Approx(vec::cosine(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("normalized yields unit vectors and keeps zero at zero") {
    Vec v{3, 4};
    CHECK(vec::norm(vec::normalized(v)) == doctest::Approx(1.0).epsilon(1e-12));
    Vec z{0, 0};
    CHECK(vec::normalized(z) == Vec{0, 0});
}

TEST_CASE("mean averages componentwise") {
    Vec m = vec::mean({Vec{1, 0}, Vec{0, 1}});
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(0.5));
    CHECK_THROWS_AS(vec::mean({}), Error);
}
