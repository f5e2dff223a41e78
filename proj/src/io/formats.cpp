#include "neusv/io/formats.hpp"

#include "neusv/error.hpp"

namespace neusv::io {

Json trace_to_json(const automaton::ConfidenceTrace& trace) {
    Json j;
    j["propositions"] = trace.props().ids();
    j["window_size"] = trace.window_size();
    j["calibrated"] = trace.calibrated();
    j["windows"] = trace.windows();
    return j;
}

automaton::ConfidenceTrace trace_from_json(const Json& j) {
    const std::string ctx = "trace";
    const auto& props_json = require(j, "propositions", ctx);
    if (!props_json.is_array()) throw Error(ErrorCode::Schema, "trace: 'propositions' must be an array");
    tl::PropositionSet props;
    for (const auto& p : props_json) {
        tl::Proposition prop;
        if (p.is_string()) {
            prop = {p.get<std::string>(), p.get<std::string>()};
        } else if (p.is_object()) {
            prop = {require_string(p, "id", ctx), p.value("display", require_string(p, "id", ctx))};
        } else {
            throw Error(ErrorCode::Schema, "trace: propositions must be strings or {id, display} objects");
        }
        if (prop.id.empty() || props.contains(prop.id)) {
            throw Error(ErrorCode::Schema, "trace: empty or duplicate proposition id '" + prop.id + "'");
        }
        props.add(std::move(prop));
    }
    const auto& w = require(j, "window_size", ctx);
    if (!w.is_number_unsigned() || w.get<std::size_t>() == 0) {
        throw Error(ErrorCode::Schema, "trace: 'window_size' must be a positive integer");
    }
    const auto& cal = require(j, "calibrated", ctx);
    if (!cal.is_boolean()) throw Error(ErrorCode::Schema, "trace: 'calibrated' must be a boolean");
    const auto& rows_json = require(j, "windows", ctx);
    if (!rows_json.is_array()) throw Error(ErrorCode::Schema, "trace: 'windows' must be an array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : rows_json) {
        if (!r.is_array()) throw Error(ErrorCode::Schema, "trace: each window must be an array");
        std::vector<double> row;
        for (const auto& c : r) {
            if (!c.is_number()) throw Error(ErrorCode::Schema, "trace: confidences must be numbers");
            row.push_back(c.get<double>());
        }
        rows.push_back(std::move(row));
    }
    return automaton::ConfidenceTrace(std::move(props), w.get<std::size_t>(), std::move(rows), cal.get<bool>());
}

automaton::ConfidenceTrace load_trace(const std::filesystem::path& path) {
    try {
        return trace_from_json(read_json_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) throw;
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_trace(const std::filesystem::path& path, const automaton::ConfidenceTrace& trace) {
    write_file(path, dump_json(trace_to_json(trace)));
}

Json profile_to_json(const scoring::CalibrationProfile& profile) {
    Json j;
    j["version"] = profile.version;
    j["gamma_fp"] = profile.gamma_fp;
    j["provenance"] = profile.provenance;
    j["ecdf"] = Json::object();
    for (const auto& [mode, dist] : profile.ecdf) j["ecdf"][std::string(to_string(mode))] = dist.samples();
    return j;
}

scoring::CalibrationProfile profile_from_json(const Json& j) {
    const std::string ctx = "calibration profile";
    scoring::CalibrationProfile p;
    p.version = require_string(j, "version", ctx);
    p.gamma_fp = require_number(j, "gamma_fp", ctx);
    if (!(p.gamma_fp > 0.0 && p.gamma_fp < 1.0)) {
        throw Error(ErrorCode::InvalidThreshold, ctx + ": gamma_fp must lie in (0, 1)");
    }
    p.provenance = require_string(j, "provenance", ctx);
    if (p.provenance.empty()) throw Error(ErrorCode::Schema, ctx + ": provenance must not be empty");
    const auto& ecdf = require(j, "ecdf", ctx);
    if (!ecdf.is_object()) throw Error(ErrorCode::Schema, ctx + ": 'ecdf' must be an object");
    for (const auto& [name, samples] : ecdf.items()) {
        const auto mode = scoring::parse_mode(name);
        if (!samples.is_array()) throw Error(ErrorCode::Schema, ctx + ": samples for " + name + " must be an array");
        std::vector<double> xs;
        for (const auto& x : samples) {
            if (!x.is_number()) throw Error(ErrorCode::Schema, ctx + ": samples must be numbers");
            xs.push_back(x.get<double>());
        }
        p.ecdf.emplace(mode, scoring::EcdfDistribution(mode, std::move(xs)));
    }
    return p;
}

scoring::CalibrationProfile load_profile(const std::filesystem::path& path) {
    try {
        return profile_from_json(read_json_file(path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) throw;
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_profile(const std::filesystem::path& path, const scoring::CalibrationProfile& profile) {
    write_file(path, dump_json(profile_to_json(profile)));
}

} // namespace neusv::io
