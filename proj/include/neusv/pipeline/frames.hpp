#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "neusv/perception/client.hpp"

namespace neusv::pipeline {

/// Image files (png, jpg, jpeg, bmp, webp) directly inside `dir`, sorted by
/// filename. Throws ErrorCode::Io when `dir` is not a directory.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

struct Windowing {
    std::vector<perception::FrameWindow> windows;
    /// Trailing frames that did not fill a window.
    std::size_t dropped_frames = 0;
};

/// Non-overlapping windows of `window_size` consecutive frames. Throws
/// ErrorCode::TooFewFrames when fewer than `window_size` frames are given and
/// ErrorCode::Domain for a zero window size.
Windowing window_frames(std::span<const std::filesystem::path> frames, std::size_t window_size);

/// Frameless windows 0..count-1, for clients that look confidences up by index.
std::vector<perception::FrameWindow> indexed_windows(std::size_t count);

} // namespace neusv::pipeline
