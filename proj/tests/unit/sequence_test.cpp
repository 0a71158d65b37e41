#include "cflab/sequence.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "cflab/curve_table.hpp"
#include "cflab/image_io.hpp"

namespace cflab {
namespace {

namespace fs = std::filesystem;

TEST(GroundTruth, CommaSeparatedIsConvertedToZeroBased) {
    const auto boxes = parse_ground_truth("100,50,30,40\n");
    ASSERT_EQ(boxes.size(), 1u);
    EXPECT_EQ(*boxes[0], (BoundingBox{99, 49, 30, 40}));
}

TEST(GroundTruth, SeparatorTolerance) {
    const auto tabs = parse_ground_truth("100\t50\t30\t40\r\n");
    const auto spaces = parse_ground_truth("  100 50  30 40\n\n");
    const auto mixed = parse_ground_truth("100, 50,\t30 ,40");
    EXPECT_EQ(tabs, parse_ground_truth("100,50,30,40"));
    EXPECT_EQ(spaces, tabs);
    EXPECT_EQ(mixed, tabs);
}

TEST(GroundTruth, AbsentTargetRowsAreKept) {
    const auto boxes = parse_ground_truth("1,1,10,10\n0,0,0,0\n2,2,10,10\n");
    ASSERT_EQ(boxes.size(), 3u);
    EXPECT_FALSE(boxes[1].has_value());
    EXPECT_TRUE(boxes[2].has_value());
}

TEST(GroundTruth, ErrorNamesLine) {
    try {
        parse_ground_truth("1,2,3,4\n5,6,seven,8\n");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    EXPECT_THROW(parse_ground_truth("1,2,3,4,5\n"), DataError);
}

TEST(GroundTruth, FormatRoundTrip) {
    const std::vector<BoundingBox> boxes{{0, 0, 5, 6}, {10.5, 3, 7, 8}};
    const auto parsed = parse_ground_truth(format_ground_truth(boxes));
    ASSERT_EQ(parsed.size(), 2u);
    EXPECT_EQ(*parsed[0], boxes[0]);
    EXPECT_EQ(*parsed[1], boxes[1]);
}

class LoadSequence : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("cflab_seq_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_ / "img");
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST_F(LoadSequence, SortsFramesNumerically) {
    const GrayImage img{2, 2, {1, 2, 3, 4}};
    for (const char* name : {"10.pgm", "2.pgm", "1.png", "notes.txt"}) {
        if (std::string(name).ends_with(".png")) {
            write_png(dir_ / "img" / name, img);
        } else if (std::string(name).ends_with(".pgm")) {
            write_pgm(dir_ / "img" / name, img);
        } else {
            write_file_atomic(dir_ / "img" / name, "x");
        }
    }
    write_file_atomic(dir_ / "groundtruth_rect.txt", "1,1,1,1\n1,1,1,1\n1,1,1,1\n1,1,1,1\n");
    const Sequence seq = load_sequence(dir_);
    ASSERT_EQ(seq.frame_paths.size(), 3u);
    EXPECT_EQ(seq.frame_paths[0].filename(), "1.png");
    EXPECT_EQ(seq.frame_paths[1].filename(), "2.pgm");
    EXPECT_EQ(seq.frame_paths[2].filename(), "10.pgm");
    EXPECT_EQ(seq.ground_truth.size(), 3u);
    EXPECT_EQ(seq.name, dir_.filename().string());
}

TEST_F(LoadSequence, MissingGroundTruthIsNamed) {
    write_pgm(dir_ / "img" / "1.pgm", GrayImage{1, 1, {0}});
    try {
        load_sequence(dir_);
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("groundtruth_rect.txt"), std::string::npos);
    }
}

TEST_F(LoadSequence, NoFrames) {
    write_file_atomic(dir_ / "groundtruth_rect.txt", "1,1,1,1\n");
    EXPECT_THROW(load_sequence(dir_), DataError);
}

TEST_F(LoadSequence, InvalidFirstBox) {
    write_pgm(dir_ / "img" / "1.pgm", GrayImage{1, 1, {0}});
    write_file_atomic(dir_ / "groundtruth_rect.txt", "1,1,0,0\n");
    EXPECT_THROW(load_sequence(dir_), DataError);
}

}  // namespace
}  // namespace cflab
