#include "neusv/pipeline/benchmark.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "neusv/error.hpp"
#include "neusv/io/csv.hpp"
#include "neusv/scoring/pearson.hpp"

namespace neusv::pipeline {

std::vector<SuiteEntry> parse_suite(const std::string& jsonl) {
    std::vector<SuiteEntry> out;
    std::set<std::string> ids;
    std::istringstream in(jsonl);
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string ctx = "suite line " + std::to_string(n);
        const auto j = io::parse_json(line, ctx);
        SuiteEntry e{io::require_string(j, "id", ctx), io::require_string(j, "theme", ctx),
                     io::require_string(j, "complexity", ctx), io::require_string(j, "prompt", ctx)};
        if (!ids.insert(e.id).second) throw Error(ErrorCode::Schema, ctx + ": repeated id '" + e.id + "'");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SuiteEntry> load_suite(const std::filesystem::path& path) { return parse_suite(io::read_file(path)); }

double normalize_alignment_score(double rating) {
    if (!(rating >= 1.0 && rating <= 5.0)) {
        throw Error(ErrorCode::Domain, "alignment score " + io::format_number(rating) + " is outside 1..5");
    }
    return (rating - 1.0) / 4.0;
}

std::map<std::string, double> load_annotations(const std::filesystem::path& path) {
    const auto table = io::read_csv(path);
    const auto id_col = table.column("video_id");
    const auto score_col = table.column("alignment_score");
    std::map<std::string, double> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string ctx = path.string() + " row " + std::to_string(r + 2);
        const auto& id = table.rows[r][id_col];
        const double score = normalize_alignment_score(io::parse_number(table.rows[r][score_col], ctx));
        if (!out.emplace(id, score).second) throw Error(ErrorCode::Schema, ctx + ": repeated video id '" + id + "'");
    }
    return out;
}

std::vector<EvaluationReport> load_reports(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::Io, "report directory '" + dir.string() + "' does not exist");
    }
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<EvaluationReport> out;
    for (const auto& p : paths) out.push_back(load_report(p));
    return out;
}

namespace {

GroupSummary summarize(const std::string& model, const std::string& group, const std::string& key,
                       const std::vector<const BenchmarkRow*>& rows) {
    GroupSummary g;
    g.model = model;
    g.group = group;
    g.key = key;
    g.count = rows.size();
    double sum = 0.0;
    std::map<EvaluationMode, std::pair<double, std::size_t>> per_mode;
    std::vector<double> scores, human;
    for (const auto* r : rows) {
        sum += r->final_score;
        for (const auto& [mode, m] : r->modes) {
            per_mode[mode].first += m.score;
            ++per_mode[mode].second;
        }
        if (r->human_score) {
            scores.push_back(r->final_score);
            human.push_back(*r->human_score);
        }
    }
    g.mean_score = io::round12(sum / static_cast<double>(rows.size()));
    for (const auto& [mode, acc] : per_mode) g.mode_means[mode] = io::round12(acc.first / static_cast<double>(acc.second));
    g.annotated = scores.size();
    try {
        g.pearson_r = io::round12(scoring::pearson(scores, human));
    } catch (const Error& e) {
        g.pearson_error = std::string(to_string(e.code())) + ": " + e.what();
    }
    return g;
}

} // namespace

BenchmarkSummary benchmark(std::span<const SuiteEntry> suite, std::span<const EvaluationReport> reports,
                           const std::map<std::string, double>& annotations) {
    BenchmarkSummary out;
    std::map<std::string, const SuiteEntry*> by_id;
    for (const auto& e : suite) by_id[e.id] = &e;

    std::map<std::string, std::set<std::string>> covered;
    std::set<std::string> videos;
    for (const auto& r : reports) {
        if (!r.video) {
            out.warnings.push_back("report for prompt '" + r.prompt + "' has no video metadata; skipped");
            continue;
        }
        auto it = by_id.find(r.video->prompt_id);
        if (it == by_id.end()) {
            out.warnings.push_back("video '" + r.video->video_id + "' names unknown prompt id '" + r.video->prompt_id +
                                   "'; skipped");
            continue;
        }
        if (!videos.insert(r.video->video_id).second) {
            out.warnings.push_back("video '" + r.video->video_id + "' has more than one report; later ones skipped");
            continue;
        }
        BenchmarkRow row{*r.video, it->second->theme, it->second->complexity, r.modes, r.final_score, std::nullopt};
        if (auto a = annotations.find(r.video->video_id); a != annotations.end()) {
            row.human_score = a->second;
        } else {
            out.warnings.push_back("no annotation for video '" + r.video->video_id + "'");
        }
        covered[r.video->model].insert(r.video->prompt_id);
        out.rows.push_back(std::move(row));
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.video.model, a.video.prompt_id, a.video.video_id) <
               std::tie(b.video.model, b.video.prompt_id, b.video.video_id);
    });

    for (const auto& [model, prompts] : covered) {
        for (const auto& e : suite) {
            if (!prompts.contains(e.id)) out.warnings.push_back("model '" + model + "' has no report for prompt '" + e.id + "'");
        }
        std::vector<const BenchmarkRow*> all;
        std::map<std::string, std::vector<const BenchmarkRow*>> themes, complexities;
        for (const auto& row : out.rows) {
            if (row.video.model != model) continue;
            all.push_back(&row);
            themes[row.theme].push_back(&row);
            complexities[row.complexity].push_back(&row);
        }
        out.groups.push_back(summarize(model, "overall", "all", all));
        for (const auto& [k, rows] : themes) out.groups.push_back(summarize(model, "theme", k, rows));
        for (const auto& [k, rows] : complexities) out.groups.push_back(summarize(model, "complexity", k, rows));
    }
    return out;
}

io::Json summary_to_json(const BenchmarkSummary& s) {
    io::Json groups = io::Json::array();
    for (const auto& g : s.groups) {
        io::Json modes = io::Json::object();
        for (const auto& [m, v] : g.mode_means) modes[std::string(scoring::to_string(m))] = v;
        io::Json j{{"model", g.model},       {"group", g.group},         {"key", g.key},
                   {"count", g.count},       {"mean_score", g.mean_score}, {"mode_means", modes},
                   {"annotated", g.annotated}, {"pearson_r", nullptr}};
        if (g.pearson_r) j["pearson_r"] = *g.pearson_r;
        if (g.pearson_error) j["pearson_error"] = *g.pearson_error;
        groups.push_back(std::move(j));
    }
    return {{"groups", groups}, {"row_count", s.rows.size()}, {"warnings", s.warnings}};
}

std::string summary_csv(const BenchmarkSummary& s) {
    io::CsvTable t;
    t.header = {"model", "group", "key", "count", "mean_score"};
    for (auto m : scoring::kAllModes) t.header.push_back(std::string(scoring::to_string(m)));
    t.header.insert(t.header.end(), {"annotated", "pearson_r", "pearson_error"});
    for (const auto& g : s.groups) {
        std::vector<std::string> row{g.model, g.group, g.key, std::to_string(g.count), io::format_number(g.mean_score)};
        for (auto m : scoring::kAllModes) {
            auto it = g.mode_means.find(m);
            row.push_back(it == g.mode_means.end() ? "" : io::format_number(it->second));
        }
        row.push_back(std::to_string(g.annotated));
        row.push_back(g.pearson_r ? io::format_number(*g.pearson_r) : "");
        row.push_back(g.pearson_error.value_or(""));
        t.rows.push_back(std::move(row));
    }
    return io::format_csv(t);
}

std::string rows_csv(const BenchmarkSummary& s) {
    io::CsvTable t;
    t.header = {"video_id", "mode", "satisfaction_probability", "score", "human_score"};
    for (const auto& r : s.rows) {
        const std::string human = r.human_score ? io::format_number(*r.human_score) : "";
        for (const auto& [mode, m] : r.modes) {
            t.rows.push_back({r.video.video_id, std::string(scoring::to_string(mode)),
                              io::format_number(m.satisfaction_probability), io::format_number(m.score), human});
        }
        t.rows.push_back({r.video.video_id, "final", "", io::format_number(r.final_score), human});
    }
    return io::format_csv(t);
}

} // namespace neusv::pipeline
