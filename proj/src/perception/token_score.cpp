#include "neusv/perception/token_score.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

#include "neusv/error.hpp"

namespace neusv::perception {

double log_softmax(std::span<const double> logits, std::size_t index) {
    if (index >= logits.size()) throw Error(ErrorCode::Domain, "logit index out of range");
    const double top = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double l : logits) sum += std::exp(l - top);
    return logits[index] - top - std::log(sum);
}

namespace {

bool is_marker(const std::string& t) { return t.size() >= 2 && t.front() == '<' && t.back() == '>'; }

} // namespace

Answer parse_answer(std::span<const TokenScore> tokens) {
    std::string text;
    for (const auto& t : tokens) {
        if (!is_marker(t.token)) text += t.token;
    }
    std::string core;
    for (char c : text) {
        if (std::isalpha(static_cast<unsigned char>(c))) core += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (!std::isspace(static_cast<unsigned char>(c)) && !std::ispunct(static_cast<unsigned char>(c))) core += '?';
        else if (std::isspace(static_cast<unsigned char>(c)) && !core.empty()) core += ' ';
    }
    while (!core.empty() && core.back() == ' ') core.pop_back();
    if (core == "yes" || core == "true") return Answer::Yes;
    if (core == "no" || core == "false") return Answer::No;
    throw Error(ErrorCode::MalformedAnswer, "expected a Yes/No answer, got '" + text + "'");
}

double answer_confidence(std::span<const TokenScore> tokens) {
    if (tokens.empty()) throw Error(ErrorCode::MalformedAnswer, "response carries no token log-probabilities");
    const Answer a = parse_answer(tokens);
    double p = 1.0;
    for (const auto& t : tokens) {
        if (std::isnan(t.logprob)) throw Error(ErrorCode::MalformedAnswer, "token log-probability is NaN");
        p *= std::min(1.0, std::exp(t.logprob));
    }
    return a == Answer::Yes ? p : 1.0 - p;
}

} // namespace neusv::perception
