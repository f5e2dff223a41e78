#include "neusv/pipeline/report.hpp"

#include "neusv/error.hpp"

namespace neusv::pipeline {

namespace {

io::Json props_json(const tl::PropositionSet& props) {
    io::Json out = io::Json::array();
    for (const auto& p : props) out.push_back({{"id", p.id}, {"display", p.display}});
    return out;
}

std::size_t require_count(const io::Json& obj, const char* key, const std::string& ctx) {
    const auto& v = io::require(obj, key, ctx);
    if (!v.is_number_unsigned()) throw Error(ErrorCode::Schema, ctx + ": '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<std::string> string_list(const io::Json& obj, const char* key, const std::string& ctx) {
    const auto& v = io::require(obj, key, ctx);
    if (!v.is_array()) throw Error(ErrorCode::Schema, ctx + ": '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& s : v) {
        if (!s.is_string()) throw Error(ErrorCode::Schema, ctx + ": '" + key + "' must hold strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

} // namespace

io::Json report_to_json(const EvaluationReport& r) {
    io::Json modes = io::Json::object();
    for (const auto& [mode, m] : r.modes) {
        modes[std::string(scoring::to_string(mode))] = {
            {"propositions", props_json(m.propositions)},
            {"specification", m.specification},
            {"satisfaction_probability", io::round12(m.satisfaction_probability)},
            {"score", io::round12(m.score)},
        };
    }
    io::Json absent = io::Json::array();
    for (auto m : r.absent) absent.push_back(std::string(scoring::to_string(m)));
    io::Json failures = io::Json::array();
    for (const auto& f : r.failures) {
        failures.push_back({{"mode", std::string(scoring::to_string(f.mode))}, {"code", f.code}, {"message", f.message}});
    }
    io::Json j{
        {"schema_version", r.schema_version},
        {"prompt", r.prompt},
        {"window_size", r.window_size},
        {"window_count", r.window_count},
        {"gamma_fp", io::round12(r.gamma_fp)},
        {"modes", modes},
        {"final_score", io::round12(r.final_score)},
        {"absent_modes", absent},
        {"failures", failures},
        {"warnings", r.warnings},
        {"provenance",
         {{"perception", r.provenance.perception},
          {"translator", r.provenance.translator},
          {"profile_version", r.provenance.profile_version},
          {"tool_version", r.provenance.tool_version},
          {"timestamp", r.provenance.timestamp}}},
    };
    if (r.video) {
        j["video"] = {{"video_id", r.video->video_id}, {"prompt_id", r.video->prompt_id}, {"model", r.video->model}};
    }
    return j;
}

EvaluationReport report_from_json(const io::Json& j) {
    const std::string ctx = "report";
    EvaluationReport r;
    const auto& version = io::require(j, "schema_version", ctx);
    if (!version.is_number_integer() || version.get<int>() != kReportSchemaVersion) {
        throw Error(ErrorCode::Schema, "report: unsupported schema_version " + version.dump());
    }
    r.prompt = io::require_string(j, "prompt", ctx);
    r.window_size = require_count(j, "window_size", ctx);
    r.window_count = require_count(j, "window_count", ctx);
    r.gamma_fp = io::require_number(j, "gamma_fp", ctx);
    r.final_score = io::require_number(j, "final_score", ctx);

    const auto& modes = io::require(j, "modes", ctx);
    if (!modes.is_object()) throw Error(ErrorCode::Schema, "report: 'modes' must be an object");
    for (const auto& [name, m] : modes.items()) {
        const std::string mctx = "report mode " + name;
        ModeReport mr;
        const auto& props = io::require(m, "propositions", mctx);
        if (!props.is_array()) throw Error(ErrorCode::Schema, mctx + ": 'propositions' must be an array");
        for (const auto& p : props) {
            mr.propositions.add({io::require_string(p, "id", mctx), io::require_string(p, "display", mctx)});
        }
        mr.specification = io::require_string(m, "specification", mctx);
        mr.satisfaction_probability = io::require_number(m, "satisfaction_probability", mctx);
        mr.score = io::require_number(m, "score", mctx);
        r.modes.emplace(scoring::parse_mode(name), std::move(mr));
    }
    for (const auto& name : string_list(j, "absent_modes", ctx)) r.absent.push_back(scoring::parse_mode(name));
    const auto& failures = io::require(j, "failures", ctx);
    if (!failures.is_array()) throw Error(ErrorCode::Schema, "report: 'failures' must be an array");
    for (const auto& f : failures) {
        r.failures.push_back({scoring::parse_mode(io::require_string(f, "mode", ctx)), io::require_string(f, "code", ctx),
                              io::require_string(f, "message", ctx)});
    }
    r.warnings = string_list(j, "warnings", ctx);

    const auto& prov = io::require(j, "provenance", ctx);
    r.provenance.perception = io::require_string(prov, "perception", ctx);
    r.provenance.translator = io::require_string(prov, "translator", ctx);
    r.provenance.profile_version = io::require_string(prov, "profile_version", ctx);
    r.provenance.tool_version = io::require_string(prov, "tool_version", ctx);
    r.provenance.timestamp = io::require_string(prov, "timestamp", ctx);

    if (auto it = j.find("video"); it != j.end()) {
        r.video = VideoInfo{io::require_string(*it, "video_id", ctx), io::require_string(*it, "prompt_id", ctx),
                            io::require_string(*it, "model", ctx)};
    }
    return r;
}

EvaluationReport load_report(const std::filesystem::path& path) {
    try {
        return report_from_json(io::read_json_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) throw;
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_report(const std::filesystem::path& path, const EvaluationReport& r) {
    io::write_file(path, io::dump_json(report_to_json(r)));
}

} // namespace neusv::pipeline
