#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "slinv/io.hpp"

using namespace slinv;
namespace fs = std::filesystem;

TEST(GridCsvTest, RoundTrip) {
    const auto g = GridFunction::sample(64, [](double x) { return std::sin(7 * x) - 0.25; });
    const std::string text = io::format_grid_csv(g);
    EXPECT_EQ(text.rfind("x,sigma\n", 0), 0u);
    const auto back = io::parse_grid_csv(text);
    ASSERT_EQ(back.intervals(), 64u);
    for (std::size_t i = 0; i <= 64; ++i) EXPECT_NEAR(back[i], g[i], 1e-14);
    // formatting is a fixed point after one pass
    EXPECT_EQ(io::format_grid_csv(back), text);
}

TEST(GridCsvTest, NoNegativeZero) {
    const GridFunction g(std::vector<double>(17, -0.0));
    EXPECT_EQ(io::format_grid_csv(g).find("-0"), std::string::npos);
}

TEST(GridCsvTest, Rejections) {
    EXPECT_THROW(io::parse_grid_csv(""), IoError);
    EXPECT_THROW(io::parse_grid_csv("x,y\n0,1\n1,1\n"), IoError);
    std::string bad = "x,sigma\n";
    for (int i = 0; i <= 16; ++i) bad += std::to_string(i / 16.0) + ",0,9\n";
    EXPECT_THROW(io::parse_grid_csv(bad), IoError);
    std::string uneven = "x,sigma\n";
    for (int i = 0; i <= 16; ++i) uneven += std::to_string(i == 3 ? 0.2 : i / 16.0) + ",0\n";
    EXPECT_THROW(io::parse_grid_csv(uneven), IoError);
    std::string junk = "x,sigma\n";
    for (int i = 0; i <= 16; ++i) junk += std::to_string(i / 16.0) + (i == 5 ? ",abc\n" : ",0\n");
    EXPECT_THROW(io::parse_grid_csv(junk), IoError);
    // too short for a grid function
    EXPECT_THROW(io::parse_grid_csv("x,sigma\n0,0\n0.5,0\n1,0\n"), StructuralError);
}

TEST(SpectralJsonTest, RoundTripIsExact) {
    const auto d = oracle::dd_constant_data(12, 2.0);
    const auto back = io::spectral_from_json(io::json::parse(io::to_json(d).dump()));
    EXPECT_EQ(back, d);
    const SpectralData nt(BoundaryKind::NT, {0.5, 3.3}, {2.5, 0.9}, -0.75);
    EXPECT_EQ(io::spectral_from_json(io::json::parse(io::to_json(nt).dump())), nt);
}

TEST(SpectralJsonTest, Rejections) {
    using io::json;
    EXPECT_THROW(io::spectral_from_json(json::array()), IoError);
    EXPECT_THROW(io::spectral_from_json(json{{"lambda", {1}}, {"alpha", {1}}}), IoError);
    EXPECT_THROW(io::spectral_from_json(json{{"kind", "QQ"}, {"lambda", {1}}, {"alpha", {1}}}),
                 StructuralError);
    EXPECT_THROW(io::spectral_from_json(json{{"kind", "DD"}, {"lambda", {1, "a"}}, {"alpha", {1, 1}}}),
                 IoError);
    EXPECT_THROW(io::spectral_from_json(json{{"kind", "DD"}, {"lambda", {1, 2}}, {"alpha", {1}}}),
                 StructuralError);
    EXPECT_THROW(
        io::spectral_from_json(json{{"kind", "DN"}, {"lambda", {1}}, {"alpha", {1}}, {"h", "x"}}),
        IoError);
}

TEST(ReportJsonTest, ValidationFields) {
    const SpectralData dup(BoundaryKind::DD, {1.0, 1.0}, {1.0, 1.0});
    const auto j = io::to_json(validate_spectral_data(dup));
    EXPECT_FALSE(j.at("ok").get<bool>());
    ASSERT_EQ(j.at("violations").size(), 1u);
    EXPECT_EQ(j.at("violations")[0].at("condition"), "A1");
    EXPECT_EQ(j.at("violations")[0].at("index"), 2);
    EXPECT_TRUE(j.contains("ell2_mu"));
    EXPECT_TRUE(j.contains("ell2_beta"));
}

TEST(KernelCsvTest, Layout) {
    TriangularKernel k(16);
    k.row(2)[1] = 0.5;
    const std::string text = io::format_kernel_csv(k);
    EXPECT_EQ(text.rfind("i,j,k\n", 0), 0u);
    EXPECT_NE(text.find("\n2,1,0.5\n"), std::string::npos);
    const auto lines = std::count(text.begin(), text.end(), '\n');
    EXPECT_EQ(lines, 1 + 17 * 18 / 2);
}

TEST(NumberTest, ListAndFormat) {
    const auto v = io::parse_number_list("0.001,1e-2, 3");
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0], 0.001);
    EXPECT_EQ(v[2], 3.0);
    EXPECT_THROW(io::parse_number_list("1,,2"), IoError);
    EXPECT_THROW(io::parse_number_list("x"), IoError);
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(io::format_number(x)), x);
}

TEST(FileTest, AtomicWriteAndRead) {
    const fs::path dir = fs::temp_directory_path() / "slinv_io_test";
    fs::create_directories(dir);
    const fs::path p = dir / "a.txt";
    io::write_text_atomic(p, "hello\n");
    EXPECT_EQ(io::read_text(p), "hello\n");
    io::write_text_atomic(p, "again\n");
    EXPECT_EQ(io::read_text(p), "again\n");
    EXPECT_FALSE(fs::exists(dir / "a.txt.tmp"));
    EXPECT_THROW(io::read_text(dir / "missing.txt"), IoError);
    EXPECT_THROW(io::write_text_atomic(dir / "no" / "such" / "dir.txt", "x"), IoError);
    fs::remove_all(dir);
}
