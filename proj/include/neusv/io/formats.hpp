#pragma once

#include "neusv/automaton/confidence_trace.hpp"
#include "neusv/io/files.hpp"
#include "neusv/scoring/calibration_profile.hpp"

namespace neusv::io {

/// {propositions:[ids], window_size, calibrated, windows:[[c, ...], ...]}.
/// Confidences are written at full precision and read back bit-exactly.
Json trace_to_json(const automaton::ConfidenceTrace& trace);
automaton::ConfidenceTrace trace_from_json(const Json& j);
automaton::ConfidenceTrace load_trace(const std::filesystem::path& path);
void save_trace(const std::filesystem::path& path, const automaton::ConfidenceTrace& trace);

/// {version, gamma_fp, provenance, ecdf:{<mode>:[sorted samples]}}.
Json profile_to_json(const scoring::CalibrationProfile& profile);
scoring::CalibrationProfile profile_from_json(const Json& j);
scoring::CalibrationProfile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const scoring::CalibrationProfile& profile);

} // namespace neusv::io
