#include "cflab/image_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cflab/curve_table.hpp"

namespace cflab {
namespace {

namespace fs = std::filesystem;

class ImageIo : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cflab_image_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(ImageIo, PgmRoundTrip) {
    GrayImage img{2, 3, {0, 10, 20, 30, 200, 255}};
    write_pgm(dir_ / "a.pgm", img);
    std::ifstream in(dir_ / "a.pgm", std::ios::binary);
    std::string head(3, '\0');
    in.read(head.data(), 3);
    EXPECT_EQ(head, "P5\n");
    const RealGrid g = read_image(dir_ / "a.pgm");
    ASSERT_EQ(g.height(), 2u);
    ASSERT_EQ(g.width(), 3u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(g[k], img.pixels[k]);
}

TEST_F(ImageIo, PngRoundTrip) {
    GrayImage img{3, 2, {5, 50, 100, 150, 250, 0}};
    write_png(dir_ / "a.png", img);
    const RealGrid g = read_image(dir_ / "a.png");
    ASSERT_EQ(g.height(), 3u);
    for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(g[k], img.pixels[k], 1e-9);
}

TEST_F(ImageIo, AsciiPpmUsesLuma) {
    write_file_atomic(dir_ / "c.ppm", "P3\n# comment\n2 1\n255\n255 0 0   0 0 255\n");
    const RealGrid g = read_image(dir_ / "c.ppm");
    EXPECT_NEAR(g(0, 0), 0.299 * 255, 1e-9);
    EXPECT_NEAR(g(0, 1), 0.114 * 255, 1e-9);
}

TEST_F(ImageIo, SixteenBitPgmIsRescaled) {
    std::string data = "P5 1 1 65535\n";
    data += static_cast<char>(0xFF);
    data += static_cast<char>(0xFF);
    write_file_atomic(dir_ / "d.pgm", data);
    EXPECT_NEAR(read_image(dir_ / "d.pgm")(0, 0), 255.0, 1e-9);
}

TEST_F(ImageIo, Errors) {
    EXPECT_THROW(read_image(dir_ / "missing.pgm"), DataError);
    write_file_atomic(dir_ / "bad.pgm", "P5\n4 4\n255\nab");
    EXPECT_THROW(read_image(dir_ / "bad.pgm"), DataError);
    write_file_atomic(dir_ / "bad.jpg", "\xFF\xD8\xFF");
    EXPECT_THROW(read_image(dir_ / "bad.jpg"), DataError);
}

TEST(DisplayImage, ConstantIsMidGray) {
    const GrayImage img = to_display_image(RealGrid(3, 3, -7.0));
    for (auto p : img.pixels) EXPECT_EQ(p, 128);
}

TEST(DisplayImage, MinMaxNormalized) {
    RealGrid g(1, 3);
    g[0] = -2.0;
    g[1] = 0.0;
    g[2] = 2.0;
    const GrayImage img = to_display_image(g);
    EXPECT_EQ(img.pixels[0], 0);
    EXPECT_EQ(img.pixels[1], 128);
    EXPECT_EQ(img.pixels[2], 255);
}

}  // namespace
}  // namespace cflab
