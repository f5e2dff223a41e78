#include "neusv/puls/spec_file.hpp"

#include "neusv/error.hpp"
#include "neusv/tl/parser.hpp"

namespace neusv::puls {

io::Json spec_to_json(const SpecFile& spec) {
    io::Json modes = io::Json::object();
    for (const auto& [mode, ms] : spec.modes) {
        io::Json props = io::Json::array();
        for (const auto& p : ms.propositions) props.push_back({{"id", p.id}, {"display", p.display}});
        io::Json m{{"propositions", props}, {"formula", tl::to_string(ms.formula)}};
        if (!ms.llm_outputs.empty()) m["llm_outputs"] = ms.llm_outputs;
        modes[std::string(scoring::to_string(mode))] = std::move(m);
    }
    return {{"prompt", spec.prompt}, {"modes", modes}};
}

SpecFile spec_from_json(const io::Json& j) {
    SpecFile spec;
    spec.prompt = io::require_string(j, "prompt", "spec");
    const auto& modes = io::require(j, "modes", "spec");
    if (!modes.is_object() || modes.empty()) throw Error(ErrorCode::Schema, "spec: 'modes' must be a non-empty object");
    for (const auto& [name, m] : modes.items()) {
        const std::string ctx = "spec mode " + name;
        ModeSpec ms;
        ms.mode = scoring::parse_mode(name);
        const auto& props = io::require(m, "propositions", ctx);
        if (!props.is_array() || props.empty()) throw Error(ErrorCode::Schema, ctx + ": 'propositions' must be a non-empty array");
        for (const auto& p : props) {
            tl::Proposition prop;
            if (p.is_string()) {
                prop = tl::normalize_proposition(p.get<std::string>());
            } else {
                prop.id = io::require_string(p, "id", ctx);
                prop.display = p.contains("display") ? io::require_string(p, "display", ctx) : prop.id;
                if (tl::normalize_id(prop.id) != prop.id) {
                    throw Error(ErrorCode::Schema, ctx + ": '" + prop.id + "' is not a normalized id");
                }
            }
            if (ms.propositions.contains(prop.id)) throw Error(ErrorCode::Schema, ctx + ": duplicate proposition " + prop.id);
            ms.propositions.add(std::move(prop));
        }
        ms.formula = tl::parse_formula(io::require_string(m, "formula", ctx), ms.propositions);
        if (auto it = m.find("llm_outputs"); it != m.end()) {
            if (!it->is_array()) throw Error(ErrorCode::Schema, ctx + ": 'llm_outputs' must be an array");
            for (const auto& o : *it) {
                if (!o.is_string()) throw Error(ErrorCode::Schema, ctx + ": 'llm_outputs' must hold strings");
                ms.llm_outputs.push_back(o.get<std::string>());
            }
        }
        spec.modes.emplace(ms.mode, std::move(ms));
    }
    return spec;
}

SpecFile load_spec_file(const std::filesystem::path& path) {
    try {
        return spec_from_json(io::read_json_file(path));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) throw;
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void save_spec_file(const std::filesystem::path& path, const SpecFile& spec) {
    io::write_file(path, io::dump_json(spec_to_json(spec)));
}

} // namespace neusv::puls
