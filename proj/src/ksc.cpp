#include "simbench/ksc.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "simbench/error.hpp"
#include "simbench/rng.hpp"
#include "simbench/stats.hpp"

namespace simbench {

std::size_t ksc_a_count(std::size_t n, std::size_t k, std::size_t i) {
    if (k < 2 || i < 1 || i > k) throw std::invalid_argument("ksc_a_count: bad (k, i)");
    double exact = static_cast<double>(n) * static_cast<double>(k - i) /
                   static_cast<double>(k - 1);
    return static_cast<std::size_t>(std::floor(exact + 0.5));  // round half-up
}

std::size_t KscCollection::a_count(std::size_t i) const {
    std::size_t c = 0;
    for (const auto& s : corpora.at(i - 1))
        if (s.source == Provenance::A) ++c;
    return c;
}

KscCollection build_ksc(std::size_t size_a, std::size_t size_b, std::size_t n,
                        std::size_t k, std::uint64_t seed, const std::string& a_id,
                        const std::string& b_id) {
    if (k < 3) throw config_error("build_ksc requires k >= 3");
    if (n < k - 1) throw config_error("build_ksc requires n >= k-1");

    std::size_t need_a = 0, need_b = 0;
    std::vector<std::size_t> a_counts(k);
    for (std::size_t i = 1; i <= k; ++i) {
        a_counts[i - 1] = ksc_a_count(n, k, i);
        need_a += a_counts[i - 1];
        need_b += n - a_counts[i - 1];
    }
    if (size_a < need_a || size_b < need_b)
        throw data_error("build_ksc: sources too small, need " + std::to_string(need_a) +
                         " samples from A and " + std::to_string(need_b) +
                         " from B (~ nk/2 = " + std::to_string(n * k / 2) + " each)");

    Rng rng(derive_seed(seed, "ksc-build"));
    std::vector<std::size_t> perm_a(size_a), perm_b(size_b);
    std::iota(perm_a.begin(), perm_a.end(), std::size_t{0});
    std::iota(perm_b.begin(), perm_b.end(), std::size_t{0});
    rng.shuffle(perm_a);
    rng.shuffle(perm_b);

    KscCollection ksc;
    ksc.k = k;
    ksc.n = n;
    ksc.seed = seed;
    ksc.source_a_id = a_id;
    ksc.source_b_id = b_id;
    ksc.corpora.resize(k);

    std::size_t cur_a = 0, cur_b = 0;
    for (std::size_t i = 0; i < k; ++i) {
        auto& corpus = ksc.corpora[i];
        corpus.reserve(n);
        for (std::size_t t = 0; t < a_counts[i]; ++t)
            corpus.push_back({Provenance::A, perm_a[cur_a++]});
        for (std::size_t t = 0; t < n - a_counts[i]; ++t)
            corpus.push_back({Provenance::B, perm_b[cur_b++]});
    }
    return ksc;
}

Corpus materialize_corpus(const KscCollection& ksc, std::size_t i, const SourcePair& src) {
    if (!src.a || !src.b) throw std::invalid_argument("materialize_corpus: missing sources");
    const auto& refs = ksc.corpora.at(i - 1);
    Corpus c;
    c.id = "c" + std::to_string(i);
    c.sentences.reserve(refs.size());
    c.tokens.reserve(refs.size());
    for (const auto& ref : refs) {
        const Corpus& s = ref.source == Provenance::A ? *src.a : *src.b;
        c.sentences.push_back(s.sentences.at(ref.index));
        c.tokens.push_back(s.tokens.at(ref.index));
    }
    return c;
}

EmbeddedCorpus materialize_embedded(const KscCollection& ksc, std::size_t i,
                                    const SourcePair& src) {
    if (!src.ea || !src.eb)
        throw std::invalid_argument("materialize_embedded: missing embeddings");
    const auto& refs = ksc.corpora.at(i - 1);
    EmbeddedCorpus out;
    out.source_id = "c" + std::to_string(i);
    out.dim = src.ea->dim;
    if (src.eb->dim != out.dim)
        throw data_error("source embeddings have mismatched dimensions");
    out.rows = refs.size();
    out.data.reserve(refs.size() * out.dim);
    for (const auto& ref : refs) {
        const EmbeddedCorpus& e = ref.source == Provenance::A ? *src.ea : *src.eb;
        out.data.insert(out.data.end(), e.row(ref.index), e.row(ref.index) + e.dim);
    }
    return out;
}

std::vector<double> normalize_z(const std::vector<double>& values) {
    return stats::standardize(values);
}

void refresh_z(DistanceTable& table) {
    if (table.entries.size() < 2) {
        for (auto& e : table.entries) e.z = 0.0;
        return;
    }
    std::vector<double> raw;
    raw.reserve(table.entries.size());
    for (const auto& e : table.entries) raw.push_back(e.raw);
    auto z = normalize_z(raw);
    for (std::size_t idx = 0; idx < z.size(); ++idx) table.entries[idx].z = z[idx];
}

DistanceTable merge_tables(const std::vector<DistanceTable>& tables) {
    if (tables.empty()) throw std::invalid_argument("merge_tables: nothing to merge");
    DistanceTable out;
    out.metric = tables.front().metric;
    out.k = tables.front().k;
    out.repetitions = tables.size();
    for (std::size_t rep = 0; rep < tables.size(); ++rep) {
        if (tables[rep].k != out.k || tables[rep].metric != out.metric)
            throw std::invalid_argument("merge_tables: inconsistent tables");
        for (auto e : tables[rep].entries) {
            e.repetition = rep;
            out.entries.push_back(e);
        }
    }
    refresh_z(out);
    return out;
}

DistanceTable compute_distances(
    const KscCollection& ksc, const SourcePair& src, const std::string& metric_name,
    const std::function<double(const Corpus&, const EmbeddedCorpus&, const Corpus&,
                               const EmbeddedCorpus&)>& distance,
    bool needs_embeddings) {
    if (needs_embeddings && (!src.ea || !src.eb))
        throw config_error("metric " + metric_name + " needs embeddings");

    DistanceTable table;
    table.metric = metric_name;
    table.k = ksc.k;
    table.repetitions = 1;

    // Materialize each c_i once.
    std::vector<Corpus> texts;
    std::vector<EmbeddedCorpus> embs;
    texts.reserve(ksc.k);
    for (std::size_t i = 1; i <= ksc.k; ++i) {
        texts.push_back(materialize_corpus(ksc, i, src));
        if (needs_embeddings) embs.push_back(materialize_embedded(ksc, i, src));
    }
    static const EmbeddedCorpus kNoEmbedding{};

    for (std::size_t i = 1; i <= ksc.k; ++i) {
        for (std::size_t j = i + 1; j <= ksc.k; ++j) {
            const EmbeddedCorpus& ei = needs_embeddings ? embs[i - 1] : kNoEmbedding;
            const EmbeddedCorpus& ej = needs_embeddings ? embs[j - 1] : kNoEmbedding;
            double raw;
            try {
                raw = distance(texts[i - 1], ei, texts[j - 1], ej);
            } catch (const std::exception& ex) {
                throw data_error("metric " + metric_name + " failed on pair (" +
                                 std::to_string(i) + "," + std::to_string(j) +
                                 "): " + ex.what());
            }
            DistanceEntry e;
            e.repetition = 0;
            e.i = i;
            e.j = j;
            e.level = j - i;
            e.raw = raw;
            table.entries.push_back(e);
        }
    }
    refresh_z(table);
    return table;
}

JudgementSet judgement_set(std::size_t k) {
    if (k < 3) throw config_error("judgement_set requires k >= 3");
    JudgementSet js;
    js.k = k;
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = i + 1; j <= k; ++j) {
            for (std::size_t q = i; q <= j; ++q) {
                for (std::size_t r = q + 1; r <= j; ++r) {
                    if (q == i && r == j) continue;
                    js.judgements.push_back({q, r, i, j});
                }
            }
        }
    }
    return js;
}

}  // namespace simbench
