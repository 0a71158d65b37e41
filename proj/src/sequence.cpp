#include "cflab/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cflab/curve_table.hpp"
#include "cflab/errors.hpp"

namespace cflab {

namespace {

namespace fs = std::filesystem;

bool is_frame_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".ppm" || ext == ".pgm";
}

// Frames order by the integer in the stem, then by name.
std::pair<long long, std::string> frame_key(const fs::path& p) {
    const std::string stem = p.stem().string();
    std::string digits;
    for (char c : stem) {
        if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    }
    long long number = -1;
    if (!digits.empty() && digits.size() < 18) number = std::stoll(digits);
    return {number, p.filename().string()};
}

}  // namespace

std::vector<std::optional<BoundingBox>> parse_ground_truth(const std::string& text) {
    std::vector<std::optional<BoundingBox>> boxes;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace_if(line.begin(), line.end(), [](char c) { return c == ',' || c == '\t' || c == '\r'; }, ' ');
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) continue;

        std::istringstream fields(line);
        double v[4];
        for (double& value : v) {
            if (!(fields >> value)) {
                throw DataError("groundtruth_rect.txt line " + std::to_string(line_no) +
                                ": expected four numbers x,y,w,h");
            }
        }
        std::string extra;
        if (fields >> extra) {
            throw DataError("groundtruth_rect.txt line " + std::to_string(line_no) +
                            ": unexpected trailing field '" + extra + "'");
        }
        BoundingBox box{v[0] - 1.0, v[1] - 1.0, v[2], v[3]};
        if (box.valid()) {
            boxes.emplace_back(box);
        } else {
            boxes.emplace_back(std::nullopt);
        }
    }
    return boxes;
}

Sequence load_sequence(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw DataError("sequence directory '" + dir.string() + "' does not exist");
    const fs::path img_dir = dir / "img";
    const fs::path gt_path = dir / "groundtruth_rect.txt";
    if (!fs::is_directory(img_dir)) throw DataError("missing image folder '" + img_dir.string() + "'");
    if (!fs::is_regular_file(gt_path)) throw DataError("missing ground truth file '" + gt_path.string() + "'");

    Sequence seq;
    seq.name = fs::absolute(dir).lexically_normal().filename().string();
    if (seq.name.empty()) seq.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();

    for (const auto& entry : fs::directory_iterator(img_dir)) {
        if (entry.is_regular_file() && is_frame_extension(entry.path())) seq.frame_paths.push_back(entry.path());
    }
    if (seq.frame_paths.empty()) throw DataError("no frames found in '" + img_dir.string() + "'");
    std::sort(seq.frame_paths.begin(), seq.frame_paths.end(),
              [](const fs::path& a, const fs::path& b) { return frame_key(a) < frame_key(b); });

    std::ifstream in(gt_path);
    if (!in) throw DataError("cannot read '" + gt_path.string() + "'");
    seq.ground_truth = parse_ground_truth(std::string(std::istreambuf_iterator<char>(in), {}));
    if (seq.ground_truth.empty() || !seq.ground_truth.front().has_value()) {
        throw DataError("first ground truth box in '" + gt_path.string() + "' is missing or invalid");
    }
    if (seq.ground_truth.size() > seq.frame_paths.size()) seq.ground_truth.resize(seq.frame_paths.size());
    return seq;
}

std::string format_ground_truth(const std::vector<BoundingBox>& boxes) {
    std::string out;
    for (const auto& b : boxes) {
        out += format_real(b.x + 1.0) + "," + format_real(b.y + 1.0) + "," + format_real(b.w) + "," +
               format_real(b.h) + "\n";
    }
    return out;
}

}  // namespace cflab
