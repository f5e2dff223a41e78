#include "neusv/puls/translate.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "neusv/tl/parser.hpp"

namespace neusv::puls {

namespace {

constexpr std::string_view kPropositionsLabel = "Output Propositions:";
constexpr std::string_view kSpecificationLabel = "Output Specification:";

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string quoted_list(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += '"' + items[i] + '"';
    }
    return out + "]";
}

std::vector<std::string> display_phrases(const tl::PropositionSet& props) {
    std::vector<std::string> out;
    for (const auto& p : props) out.push_back(p.display.empty() ? p.id : p.display);
    return out;
}

bool is_word_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

// Opening quote at `s[i]`: returns {length of the opener, closer}.
std::optional<std::pair<std::size_t, std::string_view>> opener_at(std::string_view s, std::size_t i) {
    if (s[i] == '"') return std::pair<std::size_t, std::string_view>{1, "\""};
    if (s[i] == '`') return std::pair<std::size_t, std::string_view>{1, "`"};
    if (s[i] == '\'') return std::pair<std::size_t, std::string_view>{1, "'"};
    if (s.substr(i, 3) == "\xE2\x80\x9C") return std::pair<std::size_t, std::string_view>{3, "\xE2\x80\x9D"};
    if (s.substr(i, 3) == "\xE2\x80\x98") return std::pair<std::size_t, std::string_view>{3, "\xE2\x80\x99"};
    return std::nullopt;
}

// Parses a list whose '[' is at `open`. Returns nullopt if it is not a
// well-formed flat list.
std::optional<std::vector<std::string>> list_at(std::string_view s, std::size_t open) {
    std::vector<std::string> items;
    std::size_t i = open + 1;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i < s.size() && s[i] == ']') return items;
    while (i < s.size()) {
        skip_ws();
        std::string item;
        if (auto q = opener_at(s, i)) {
            const auto [len, closer] = *q;
            std::size_t j = i + len;
            for (;;) {
                j = s.find(closer, j);
                if (j == std::string_view::npos) return std::nullopt;
                // An apostrophe inside a word ("dog's") does not close.
                const std::size_t after = j + closer.size();
                if (closer == "'" && after < s.size() && is_word_char(static_cast<unsigned char>(s[after]))) {
                    j = after;
                    continue;
                }
                break;
            }
            item = std::string(s.substr(i + len, j - i - len));
            i = j + closer.size();
            skip_ws();
        } else {
            const std::size_t j = s.find_first_of(",]", i);
            if (j == std::string_view::npos) return std::nullopt;
            item = trim(s.substr(i, j - i));
            if (item.find_first_of("[\n") != std::string::npos) return std::nullopt;
            i = j;
        }
        items.push_back(trim(item));
        if (i >= s.size()) return std::nullopt;
        if (s[i] == ']') return items;
        if (s[i] != ',') return std::nullopt;
        ++i;
    }
    return std::nullopt;
}

std::string strip_code_fences(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (trim(line).starts_with("```")) continue;
        out += line;
        out += '\n';
    }
    return out;
}

std::optional<std::size_t> find_label(const std::string& text, std::string_view label) {
    std::string lower(text.size(), '\0');
    std::transform(text.begin(), text.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    std::string needle(label);
    std::transform(needle.begin(), needle.end(), needle.begin(), [](unsigned char c) { return std::tolower(c); });
    const auto pos = lower.rfind(needle);
    if (pos == std::string::npos) return std::nullopt;
    return pos + needle.size();
}

bool has_operator(const std::string& line) {
    static const std::vector<std::string> words{"AND", "OR", "NOT", "UNTIL", "ALWAYS", "EVENTUALLY",
                                                "NEXT", "IMPLIES", "G", "F", "X", "U"};
    if (line.find("->") != std::string::npos || line.find('&') != std::string::npos ||
        line.find('|') != std::string::npos) {
        return true;
    }
    std::string word;
    auto matches = [&] { return std::find(words.begin(), words.end(), word) != words.end(); };
    for (char c : line) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            word += c;
        } else {
            if (matches()) return true;
            word.clear();
        }
    }
    return matches();
}

} // namespace

std::vector<ChatMessage> render_t2p_messages(const FewShotStore& store, const std::string& prompt) {
    std::vector<ChatMessage> msgs{{"system", store.system_template, {}}};
    for (const auto& ex : store.examples) {
        msgs.push_back({"user", "Input Prompt: " + ex.prompt, {}});
        std::string answer;
        if (ex.reasoning) answer = "Reasoning: " + *ex.reasoning + "\n\n";
        answer += std::string(kPropositionsLabel) + " " + quoted_list(ex.propositions);
        msgs.push_back({"assistant", answer, {}});
    }
    msgs.push_back({"user", "Input Prompt: " + prompt, {}});
    return msgs;
}

std::vector<ChatMessage> render_t2tl_messages(const FewShotStore& store, const std::string& prompt,
                                              const tl::PropositionSet& props) {
    std::vector<ChatMessage> msgs{{"system", store.system_template, {}}};
    auto user_turn = [](const std::string& p, const std::vector<std::string>& phrases) {
        return "Input Prompt: " + p + "\nInput Propositions: " + quoted_list(phrases);
    };
    for (const auto& ex : store.examples) {
        msgs.push_back({"user", user_turn(ex.prompt, ex.propositions), {}});
        std::string answer;
        if (ex.reasoning) answer = "Reasoning: " + *ex.reasoning + "\n\n";
        answer += std::string(kSpecificationLabel) + " " + ex.specification.value_or("");
        msgs.push_back({"assistant", answer, {}});
    }
    msgs.push_back({"user", user_turn(prompt, display_phrases(props)), {}});
    return msgs;
}

std::vector<std::string> extract_proposition_list(const std::string& output) {
    std::string_view s = output;
    const auto label = find_label(output, kPropositionsLabel);
    if (label) s = s.substr(*label);
    std::optional<std::vector<std::string>> last;
    for (std::size_t i = s.find('['); i != std::string_view::npos; i = s.find('[', i + 1)) {
        if (auto items = list_at(s, i)) {
            last = std::move(items);
            if (label) break;
        }
    }
    if (!last) throw Error(ErrorCode::UnparseableList, "no proposition list found in model output");
    return *last;
}

std::string extract_specification(const std::string& output) {
    const std::string text = strip_code_fences(output);
    if (auto at = find_label(text, kSpecificationLabel)) {
        std::istringstream rest(text.substr(*at));
        std::string line;
        while (std::getline(rest, line)) {
            if (auto t = trim(line); !t.empty()) return t;
        }
        return {};
    }
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto t = trim(line); !t.empty()) lines.push_back(t);
    }
    for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
        if (has_operator(*it)) return *it;
    }
    return lines.empty() ? std::string() : lines.back();
}

PropositionResult translate_t2p(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                EvaluationMode mode) {
    const auto& store = library.get(Stage::TextToPropositions, mode);
    PropositionResult result;
    result.raw_output = llm.generate(render_t2p_messages(store, prompt));
    const auto items = extract_proposition_list(result.raw_output);
    if (items.empty()) throw Error(ErrorCode::EmptyProposition, "model returned an empty proposition list");
    for (const auto& item : items) result.propositions.add(tl::normalize_proposition(item));
    return result;
}

SpecificationResult translate_t2tl(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                   const tl::PropositionSet& props, EvaluationMode mode) {
    const auto& store = library.get(Stage::TextToSpecification, mode);
    auto messages = render_t2tl_messages(store, prompt, props);
    SpecificationResult result;
    ErrorCode last_code = ErrorCode::TranslationFailed;
    std::string last_message;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const auto reply = llm.generate(messages);
        result.raw_outputs.push_back(reply);
        try {
            result.formula = tl::parse_formula(extract_specification(reply), props);
            return result;
        } catch (const Error& e) {
            last_code = e.code();
            last_message = e.what();
        }
        messages.push_back({"assistant", reply, {}});
        messages.push_back({"user",
                            "That answer could not be used (" + last_message +
                                "). Reply with one specification that uses only these propositions: " +
                                quoted_list(display_phrases(props)),
                            {}});
    }
    if (last_code == ErrorCode::UnknownAtom) throw Error(ErrorCode::UnknownAtom, last_message);
    throw Error(ErrorCode::TranslationFailed, "no usable specification after retry: " + last_message);
}

Translation translate_all_modes(LlmClient& llm, const FewShotLibrary& library, const std::string& prompt,
                                std::span<const EvaluationMode> modes) {
    Translation out;
    for (auto mode : modes) {
        try {
            auto props = translate_t2p(llm, library, prompt, mode);
            auto spec = translate_t2tl(llm, library, prompt, props.propositions, mode);
            ModeSpec ms;
            ms.mode = mode;
            ms.propositions = std::move(props.propositions);
            ms.formula = std::move(spec.formula);
            ms.llm_outputs.push_back(std::move(props.raw_output));
            for (auto& r : spec.raw_outputs) ms.llm_outputs.push_back(std::move(r));
            out.specs.emplace(mode, std::move(ms));
        } catch (const Error& e) {
            out.failures.push_back({mode, e.code(), e.what()});
        }
    }
    if (out.specs.empty()) {
        std::string msg = "translation failed for every mode";
        for (const auto& f : out.failures) msg += "; " + std::string(scoring::to_string(f.mode)) + ": " + f.message;
        throw Error(ErrorCode::TranslationFailed, msg);
    }
    return out;
}

} // namespace neusv::puls
