#include "neusv/pipeline/frames.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "neusv/error.hpp"

namespace neusv::pipeline {

namespace {

bool is_image(const std::filesystem::path& p) {
    static constexpr std::array<std::string_view, 5> kExtensions{".png", ".jpg", ".jpeg", ".bmp", ".webp"};
    auto ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return std::find(kExtensions.begin(), kExtensions.end(), ext) != kExtensions.end();
}

} // namespace

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::Io, "frame directory '" + dir.string() + "' does not exist");
    }
    std::vector<std::filesystem::path> frames;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_image(entry.path())) frames.push_back(entry.path());
    }
    std::sort(frames.begin(), frames.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    return frames;
}

Windowing window_frames(std::span<const std::filesystem::path> frames, std::size_t window_size) {
    if (window_size == 0) throw Error(ErrorCode::Domain, "window size must be at least 1");
    if (frames.size() < window_size) {
        throw Error(ErrorCode::TooFewFrames, std::to_string(frames.size()) + " frames cannot fill a window of " +
                                                 std::to_string(window_size));
    }
    Windowing out;
    const std::size_t count = frames.size() / window_size;
    for (std::size_t j = 0; j < count; ++j) {
        auto first = frames.begin() + static_cast<std::ptrdiff_t>(j * window_size);
        out.windows.push_back({j, {first, first + static_cast<std::ptrdiff_t>(window_size)}});
    }
    out.dropped_frames = frames.size() - count * window_size;
    return out;
}

std::vector<perception::FrameWindow> indexed_windows(std::size_t count) {
    std::vector<perception::FrameWindow> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j].index = j;
    return out;
}

} // namespace neusv::pipeline
