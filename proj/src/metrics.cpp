#include "simbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "simbench/error.hpp"
#include "simbench/stats.hpp"

namespace simbench {
namespace {

std::string upper(std::string s) {
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

using TokenCount = std::pair<std::string, std::size_t>;

std::unordered_map<std::string, std::size_t> count_tokens(const Corpus& c) {
    std::unordered_map<std::string, std::size_t> counts;
    for (const auto& sent : c.tokens)
        for (const auto& t : sent) ++counts[t];
    return counts;
}

std::size_t total_tokens(const std::unordered_map<std::string, std::size_t>& counts) {
    std::size_t n = 0;
    for (const auto& [_, c] : counts) n += c;
    return n;
}

// Count-descending, token-ascending: deterministic ranking.
void sort_by_count(std::vector<TokenCount>& items) {
    std::sort(items.begin(), items.end(), [](const TokenCount& a, const TokenCount& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

}  // namespace

std::string metric_name(MetricId id) {
    switch (id) {
        case MetricId::CHI: return "CHI";
        case MetricId::ZIPF: return "ZIPF";
        case MetricId::FID: return "FID";
        case MetricId::PR: return "PR";
        case MetricId::DC: return "DC";
        case MetricId::MAUVE: return "MAUVE";
        case MetricId::CLASSIFIER: return "CLASSIFIER";
        case MetricId::IRPR: return "IRPR";
    }
    throw std::logic_error("unreachable metric id");
}

MetricId metric_from_string(const std::string& name) {
    std::string n = upper(name);
    for (MetricId id : kAllMetrics)
        if (metric_name(id) == n) return id;
    throw config_error("unknown metric: " + name);
}

bool metric_needs_embeddings(MetricId id) {
    return id != MetricId::CHI && id != MetricId::ZIPF;
}

double chi_distance(const Corpus& p, const Corpus& q, const MetricConfig& cfg) {
    if (cfg.top_n_tokens < 1) throw config_error("chi_distance: top_n_tokens >= 1");
    auto cp = count_tokens(p);
    auto cq = count_tokens(q);
    const double np = static_cast<double>(total_tokens(cp));
    const double nq = static_cast<double>(total_tokens(cq));
    if (np == 0.0 || nq == 0.0) throw data_error("chi_distance: empty vocabulary");

    std::unordered_map<std::string, std::size_t> combined = cp;
    for (const auto& [t, c] : cq) combined[t] += c;
    std::vector<TokenCount> ranked(combined.begin(), combined.end());
    sort_by_count(ranked);
    if (ranked.size() > cfg.top_n_tokens) ranked.resize(cfg.top_n_tokens);

    // Rescale both corpora to a common total so corpus size drops out.
    const double common = 0.5 * (np + nq);
    const double sp = common / np, sq = common / nq;

    double x2 = 0.0, compared = 0.0;
    for (const auto& [tok, _] : ranked) {
        auto ip = cp.find(tok);
        auto iq = cq.find(tok);
        double op = ip == cp.end() ? 0.0 : static_cast<double>(ip->second) * sp;
        double oq = iq == cq.end() ? 0.0 : static_cast<double>(iq->second) * sq;
        double e = 0.5 * (op + oq);
        if (e <= 0.0) continue;
        x2 += (op - e) * (op - e) / e + (oq - e) * (oq - e) / e;
        compared += op + oq;
    }
    if (compared == 0.0) throw data_error("chi_distance: no comparable tokens");
    return x2 / (x2 + compared);
}

double zipf_coefficient(const Corpus& c, std::size_t top_n) {
    auto counts = count_tokens(c);
    if (counts.size() < 2)
        throw data_error("zipf fit requires >= 2 distinct tokens in " + c.id);
    std::vector<TokenCount> ranked(counts.begin(), counts.end());
    sort_by_count(ranked);
    if (ranked.size() > top_n) ranked.resize(top_n);

    std::vector<double> log_rank, log_freq;
    log_rank.reserve(ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) {
        log_rank.push_back(std::log(static_cast<double>(r + 1)));
        log_freq.push_back(std::log(static_cast<double>(ranked[r].second)));
    }
    // Zipf: freq ~ rank^{-z}; the OLS slope is -z. A flat profile gives 0.
    return -stats::ols_fit(log_rank, log_freq).slope;
}

double zipf_distance(const Corpus& p, const Corpus& q, const MetricConfig& cfg) {
    if (cfg.top_n_tokens < 2) throw config_error("zipf_distance: top_n_tokens >= 2");
    return std::abs(zipf_coefficient(p, cfg.top_n_tokens) -
                    zipf_coefficient(q, cfg.top_n_tokens));
}

double metric_distance(MetricId id, const Corpus& p, const EmbeddedCorpus& ep,
                       const Corpus& q, const EmbeddedCorpus& eq,
                       const MetricConfig& cfg) {
    switch (id) {
        case MetricId::CHI: return chi_distance(p, q, cfg);
        case MetricId::ZIPF: return zipf_distance(p, q, cfg);
        case MetricId::FID: return fid(ep, eq);
        case MetricId::PR: return pr_distance(ep, eq, cfg);
        case MetricId::DC: return dc_distance(ep, eq, cfg);
        case MetricId::MAUVE: return mauve_distance(ep, eq, cfg);
        case MetricId::CLASSIFIER: return classifier_distance(ep, eq, cfg);
        case MetricId::IRPR: return irpr_distance(ep, eq);
    }
    throw std::logic_error("unreachable metric id");
}

}  // namespace simbench
