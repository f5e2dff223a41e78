#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "neusv/io/files.hpp"
#include "neusv/puls/translate.hpp"

namespace neusv::puls {

/// {prompt, modes:{<mode>:{propositions:[{id, display}], formula, llm_outputs?}}}
struct SpecFile {
    std::string prompt;
    std::map<EvaluationMode, ModeSpec> modes;

    friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

io::Json spec_to_json(const SpecFile& spec);
/// Parses every formula against its mode's propositions.
SpecFile spec_from_json(const io::Json& j);
SpecFile load_spec_file(const std::filesystem::path& path);
void save_spec_file(const std::filesystem::path& path, const SpecFile& spec);

} // namespace neusv::puls
