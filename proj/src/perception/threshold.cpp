#include "neusv/perception/threshold.hpp"

#include <algorithm>
#include <cctype>

#include "neusv/error.hpp"
#include "neusv/io/csv.hpp"

namespace neusv::perception {

namespace {

struct Counts {
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

Counts count_labels(std::span<const CalibrationSample> samples) {
    Counts c;
    for (const auto& s : samples) {
        if (!(s.confidence >= 0.0 && s.confidence <= 1.0)) {
            throw Error(ErrorCode::Domain, "calibration confidence outside [0, 1]");
        }
        (s.present ? c.positives : c.negatives)++;
    }
    if (c.positives == 0 || c.negatives == 0) {
        throw Error(ErrorCode::SingleClass, "calibration needs both present and absent samples");
    }
    return c;
}

std::vector<CalibrationSample> sorted_by_score(std::span<const CalibrationSample> samples) {
    std::vector<CalibrationSample> s(samples.begin(), samples.end());
    std::stable_sort(s.begin(), s.end(),
                     [](const CalibrationSample& a, const CalibrationSample& b) { return a.confidence < b.confidence; });
    return s;
}

} // namespace

double accuracy_at(std::span<const CalibrationSample> samples, double gamma) {
    if (samples.empty()) throw Error(ErrorCode::SingleClass, "no calibration samples");
    std::size_t correct = 0;
    for (const auto& s : samples) correct += (s.confidence >= gamma) == s.present ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(samples.size());
}

ThresholdResult find_optimal_threshold(std::span<const CalibrationSample> samples) {
    const Counts c = count_labels(samples);
    const auto s = sorted_by_score(samples);
    // At the lowest observed score every sample is predicted positive.
    std::size_t correct = c.positives;
    std::size_t best_correct = 0;
    double best_gamma = s.front().confidence;
    for (std::size_t i = 0; i < s.size();) {
        const double gamma = s[i].confidence;
        if (correct > best_correct) {
            best_correct = correct;
            best_gamma = gamma;
        }
        // Samples at this score are predicted negative from the next threshold on.
        for (; i < s.size() && s[i].confidence == gamma; ++i) {
            if (s[i].present) --correct;
            else ++correct;
        }
    }
    return {best_gamma, static_cast<double>(best_correct) / static_cast<double>(s.size())};
}

std::vector<RocPoint> roc_curve(std::span<const CalibrationSample> samples) {
    const Counts c = count_labels(samples);
    auto s = sorted_by_score(samples);
    std::reverse(s.begin(), s.end());
    std::vector<RocPoint> out{{0.0, 0.0, std::nullopt}};
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < s.size();) {
        const double t = s[i].confidence;
        for (; i < s.size() && s[i].confidence == t; ++i) (s[i].present ? tp : fp)++;
        out.push_back({static_cast<double>(fp) / static_cast<double>(c.negatives),
                       static_cast<double>(tp) / static_cast<double>(c.positives), t});
    }
    out.push_back({1.0, 1.0, std::nullopt});
    return out;
}

double roc_auc(std::span<const RocPoint> curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    }
    return area;
}

std::vector<CalibrationSample> read_samples_csv(const std::filesystem::path& path) {
    const auto table = io::read_csv(path);
    const auto score_col = table.column("score");
    const auto label_col = table.column("label");
    std::vector<CalibrationSample> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string ctx = path.string() + " row " + std::to_string(r + 2);
        std::string label = table.rows[r][label_col];
        for (char& ch : label) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        bool present;
        if (label == "1" || label == "true") present = true;
        else if (label == "0" || label == "false") present = false;
        else throw Error(ErrorCode::Schema, ctx + ": label must be 0/1 or true/false");
        out.push_back({io::parse_number(table.rows[r][score_col], ctx), present});
    }
    return out;
}

void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> curve) {
    io::CsvTable t{{"fpr", "tpr", "threshold"}, {}};
    for (const auto& p : curve) {
        t.rows.push_back({io::format_number(p.fpr), io::format_number(p.tpr),
                          p.threshold ? io::format_number(*p.threshold) : std::string()});
    }
    io::write_csv(path, t);
}

} // namespace neusv::perception
