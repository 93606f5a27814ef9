#include "simbench/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simbench/error.hpp"

namespace simbench {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

json parse_scalar(const std::string& raw, std::size_t line_no) {
    std::string v = trim(raw);
    if (v.empty()) throw config_error("config line " + std::to_string(line_no) + ": empty value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw config_error("config line " + std::to_string(line_no) + ": unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\\' && i + 2 < v.size()) {
                ++i;
                out += v[i] == 'n' ? '\n' : v[i] == 't' ? '\t' : v[i];
            } else {
                out += v[i];
            }
        }
        return json(out);
    }
    if (v == "true") return json(true);
    if (v == "false") return json(false);
    try {
        if (v.find_first_of(".eE") == std::string::npos) {
            std::size_t used = 0;
            long long i = std::stoll(v, &used, 10);
            if (used == v.size()) return json(i);
        } else {
            std::size_t used = 0;
            double d = std::stod(v, &used);
            if (used == v.size()) return json(d);
        }
    } catch (const std::exception&) {
        // falls through to the error below
    }
    throw config_error("config line " + std::to_string(line_no) + ": cannot parse value '" + v + "'");
}

json parse_value(const std::string& raw, std::size_t line_no) {
    std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']')
            throw config_error("config line " + std::to_string(line_no) + ": unterminated array");
        json arr = json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::string cur;
        bool quoted = false;
        for (char c : body) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) {
                if (!trim(cur).empty()) arr.push_back(parse_scalar(cur, line_no));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) arr.push_back(parse_scalar(cur, line_no));
        return arr;
    }
    return parse_scalar(v, line_no);
}

json* descend(json& root, const std::string& dotted, std::size_t line_no) {
    json* node = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        part = trim(part);
        if (part.empty())
            throw config_error("config line " + std::to_string(line_no) + ": bad table name");
        node = &(*node)[part];
        if (node->is_null()) *node = json::object();
        if (!node->is_object())
            throw config_error("config line " + std::to_string(line_no) +
                               ": table collides with a value");
    }
    return node;
}

}  // namespace

json parse_toml_subset(const std::string& text) {
    json root = json::object();
    json* current = &root;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config line " + std::to_string(line_no) + ": bad table header");
            current = descend(root, line.substr(1, line.size() - 2), line_no);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw config_error("config line " + std::to_string(line_no) + ": empty key");
        (*current)[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return root;
}

json load_config_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "toml") return parse_toml_subset(text);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw config_error("config file is not valid JSON: " + path);
    return doc;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error(std::string("config field '") + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig run_config_from_json(const json& doc) {
    if (!doc.is_object()) throw config_error("config root must be an object");
    RunConfig cfg;
    cfg.n = get_or<std::size_t>(doc, "n", cfg.n);
    cfg.k = get_or<std::size_t>(doc, "k", cfg.k);
    cfg.repetitions = get_or<std::size_t>(doc, "repetitions", cfg.repetitions);
    cfg.output_dir = get_or<std::string>(doc, "output_dir", cfg.output_dir);
    if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("metrics")) {
        cfg.metrics.clear();
        for (const auto& m : doc.at("metrics")) cfg.metrics.push_back(m.get<std::string>());
    }
    cfg.workers = get_or<std::size_t>(doc, "workers", cfg.workers);

    if (doc.contains("sources")) {
        const json& s = doc.at("sources");
        cfg.a_path = get_or<std::string>(s, "a", "");
        cfg.b_path = get_or<std::string>(s, "b", "");
        std::string shared = get_or<std::string>(s, "format", "");
        cfg.a_format = get_or<std::string>(s, "a_format", shared);
        cfg.b_format = get_or<std::string>(s, "b_format", shared);
    }

    if (doc.contains("embedding")) {
        const json& e = doc.at("embedding");
        std::string mode = get_or<std::string>(e, "mode", "builtin");
        if (mode == "builtin") {
            cfg.embedding.mode = EmbeddingSpec::Mode::builtin;
        } else if (mode == "precomputed") {
            cfg.embedding.mode = EmbeddingSpec::Mode::precomputed;
        } else {
            throw config_error("embedding.mode must be 'builtin' or 'precomputed'");
        }
        cfg.embedding.dims = get_or<std::size_t>(e, "dims", cfg.embedding.dims);
        cfg.embedding.a_path = get_or<std::string>(e, "a", "");
        cfg.embedding.b_path = get_or<std::string>(e, "b", "");
    }

    if (doc.contains("metric_config")) {
        const json& m = doc.at("metric_config");
        MetricConfig& mc = cfg.metric_config;
        mc.top_n_tokens = get_or<std::size_t>(m, "top_n_tokens", mc.top_n_tokens);
        mc.knn_k = get_or<std::size_t>(m, "knn_k", mc.knn_k);
        if (m.contains("mauve_num_clusters")) {
            const json& v = m.at("mauve_num_clusters");
            if (v.is_string()) {
                if (v.get<std::string>() != "auto")
                    throw config_error("mauve_num_clusters must be an integer or \"auto\"");
                mc.mauve_num_clusters = 0;
            } else {
                mc.mauve_num_clusters = v.get<std::size_t>();
            }
        }
        mc.mauve_scale_c = get_or<double>(m, "mauve_scale_c", mc.mauve_scale_c);
        mc.mauve_grid_size = get_or<std::size_t>(m, "mauve_grid_size", mc.mauve_grid_size);
        mc.classifier_split = get_or<double>(m, "classifier_split", mc.classifier_split);
        mc.classifier_epochs = get_or<std::size_t>(m, "classifier_epochs", mc.classifier_epochs);
    }

    if (doc.contains("robustness")) {
        const json& r = doc.at("robustness");
        RobustnessSpec& rs = cfg.robustness;
        rs.enabled = get_or<bool>(r, "enabled", rs.enabled);
        rs.asymptote_size = get_or<std::size_t>(r, "asymptote_size", rs.asymptote_size);
        rs.asymptote_reps = get_or<std::size_t>(r, "asymptote_reps", rs.asymptote_reps);
        rs.repetitions = get_or<std::size_t>(r, "repetitions", rs.repetitions);
        rs.imbalance_total = get_or<std::size_t>(r, "imbalance_total", rs.imbalance_total);
        if (r.contains("grid")) {
            rs.grid.clear();
            for (const auto& g : r.at("grid")) rs.grid.push_back(g.get<std::size_t>());
        }
    }

    if (doc.contains("timing")) {
        const json& t = doc.at("timing");
        cfg.timing.enabled = get_or<bool>(t, "enabled", cfg.timing.enabled);
        cfg.timing.ops = get_or<std::size_t>(t, "ops", cfg.timing.ops);
        cfg.timing.corpus_size = get_or<std::size_t>(t, "corpus_size", cfg.timing.corpus_size);
    }

    return cfg;
}

json run_config_to_json(const RunConfig& cfg) {
    json doc;
    doc["n"] = cfg.n;
    doc["k"] = cfg.k;
    doc["repetitions"] = cfg.repetitions;
    doc["output_dir"] = cfg.output_dir;
    if (cfg.seed) doc["seed"] = *cfg.seed;
    doc["metrics"] = cfg.metrics;
    doc["workers"] = cfg.workers;
    doc["sources"] = {{"a", cfg.a_path},
                      {"b", cfg.b_path},
                      {"a_format", cfg.a_format},
                      {"b_format", cfg.b_format}};
    doc["embedding"] = {
        {"mode", cfg.embedding.mode == EmbeddingSpec::Mode::builtin ? "builtin" : "precomputed"},
        {"dims", cfg.embedding.dims},
        {"a", cfg.embedding.a_path},
        {"b", cfg.embedding.b_path}};
    const MetricConfig& mc = cfg.metric_config;
    doc["metric_config"] = {{"top_n_tokens", mc.top_n_tokens},
                            {"knn_k", mc.knn_k},
                            {"mauve_num_clusters", mc.mauve_num_clusters},
                            {"mauve_scale_c", mc.mauve_scale_c},
                            {"mauve_grid_size", mc.mauve_grid_size},
                            {"classifier_split", mc.classifier_split},
                            {"classifier_epochs", mc.classifier_epochs}};
    doc["robustness"] = {{"enabled", cfg.robustness.enabled},
                         {"asymptote_size", cfg.robustness.asymptote_size},
                         {"asymptote_reps", cfg.robustness.asymptote_reps},
                         {"repetitions", cfg.robustness.repetitions},
                         {"grid", cfg.robustness.grid},
                         {"imbalance_total", cfg.robustness.imbalance_total}};
    doc["timing"] = {{"enabled", cfg.timing.enabled},
                     {"ops", cfg.timing.ops},
                     {"corpus_size", cfg.timing.corpus_size}};
    return doc;
}

RunConfig load_run_config(const std::string& path) {
    return run_config_from_json(load_config_document(path));
}

}  // namespace simbench
