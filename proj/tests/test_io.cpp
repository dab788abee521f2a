#include "support.hpp"

#include "triqal/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <algorithm>
#include <cstring>
#include <fstream>

using namespace triqal;
using namespace triqal::testing;
using nlohmann::json;

namespace {

std::string field_of(const json& j) {
    try {
        algebra_from_json(j);
    } catch (const ParseError& e) {
        return e.field();
    }
    return "";
}

json trivial_json() {
    return to_json({BasisPermutation::identity(2), embed(trivial_solution()), std::nullopt, std::nullopt});
}

bool bit_equal(const DenseTensor& a, const DenseTensor& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::memcmp(&a.data()[k], &b.data()[k], sizeof(Scalar)) != 0) return false;
    }
    return true;
}

}  // namespace

TEST(ParseComplex, Literals) {
    EXPECT_EQ(parse_complex("0.25"), Scalar(0.25));
    EXPECT_EQ(parse_complex("-1"), Scalar(-1.0));
    EXPECT_EQ(parse_complex("1+2i"), Scalar(1.0, 2.0));
    EXPECT_EQ(parse_complex("1.5-0.5i"), Scalar(1.5, -0.5));
    EXPECT_EQ(parse_complex("2i"), Scalar(0.0, 2.0));
    EXPECT_EQ(parse_complex("-i"), Scalar(0.0, -1.0));
    EXPECT_EQ(parse_complex("1e-3+1e2i"), Scalar(1e-3, 1e2));
    for (const char* bad : {"", "abc", "1+", "i2", "1+2", "--1"}) EXPECT_THROW(parse_complex(bad), TensorError) << bad;
}

TEST(AlgebraJson, RoundTripIsBitExact) {
    Rng rng(71);
    const auto p = three_cycle(3);
    AlgebraFile file{p, random_tensor(3, "lluu", rng), random_tensor(3, "lllu", rng), random_tensor(3, "ll", rng)};
    file.Qbar.at({0, 1, 2, 0}) = Scalar(0.1 + 0.2, 1.0 / 3.0);
    file.Qbar.at({2, 2, 2, 2}) = Scalar(5e-324, -1e300);

    const auto dir = std::filesystem::temp_directory_path() / "triqal_io_test";
    std::filesystem::create_directories(dir);
    save_algebra(dir / "alg.json", file);
    const AlgebraFile back = load_algebra(dir / "alg.json");
    EXPECT_TRUE(std::ranges::equal(back.P.map(), p.map()));
    EXPECT_TRUE(bit_equal(back.Qbar, file.Qbar));
    ASSERT_TRUE(back.Qm && back.h);
    EXPECT_TRUE(bit_equal(*back.Qm, *file.Qm));
    EXPECT_TRUE(bit_equal(*back.h, *file.h));
    std::filesystem::remove_all(dir);
}

TEST(AlgebraJson, ErrorsNameTheField) {
    json j = trivial_json();
    j["P"] = {1, 0};  // order 2
    EXPECT_EQ(field_of(j), "P");
    j = trivial_json();
    j["P"] = {0, 0};
    EXPECT_EQ(field_of(j), "P");
    j = trivial_json();
    j.erase("Qbar");
    EXPECT_EQ(field_of(j), "Qbar");
    j = trivial_json();
    j["Qbar"][1][0][0][0] = {1.0};
    EXPECT_EQ(field_of(j), "Qbar[1][0][0][0]");
    j = trivial_json();
    j["Qbar"][0].erase(1);
    EXPECT_EQ(field_of(j).rfind("Qbar", 0), 0u);
    j = trivial_json();
    j["n"] = 3;
    EXPECT_NE(field_of(j), "");
    j = trivial_json();
    j["n"] = "two";
    EXPECT_EQ(field_of(j), "n");
}

TEST(AlgebraJson, Layout) {
    const json j = trivial_json();
    EXPECT_EQ(j["n"], 2);
    EXPECT_EQ(j["P"], json({0, 1}));
    EXPECT_EQ(j["Qbar"][0][1][0][1], json({1.0, 0.0}));
    EXPECT_FALSE(j.contains("Qm"));
    EXPECT_FALSE(j.contains("h"));
}

TEST(FormFile, BothLayouts) {
    const auto dir = std::filesystem::temp_directory_path() / "triqal_form_test";
    std::filesystem::create_directories(dir);
    const json rows = json::array({json::array({json::array({2.0, 0.0}), json::array({0.5, 0.0})}),
                                   json::array({json::array({0.5, 0.0}), json::array({1.0, 0.0})})});
    write_json(dir / "bare.json", rows);
    write_json(dir / "wrapped.json", json{{"h", rows}});
    const DenseTensor a = load_form(dir / "bare.json", 2);
    const DenseTensor b = load_form(dir / "wrapped.json", 2);
    EXPECT_EQ(a.at({0, 1}), Scalar(0.5));
    EXPECT_EQ(max_abs_diff(a, b), 0.0);
    EXPECT_THROW(load_form(dir / "bare.json", 3), ParseError);
    EXPECT_THROW(load_form(dir / "missing.json", 2), TensorError);
    std::filesystem::remove_all(dir);
}
