#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "simbench/corpus.hpp"
#include "simbench/embedding.hpp"

namespace simbench {

enum class Provenance : std::uint8_t { A, B };

struct SampleRef {
    Provenance source;
    std::size_t index;  // row in the originating source corpus
};

// k disjoint corpora of size n mixing sources A and B in fixed proportions:
// c_i draws round(n*(k-i)/(k-1)) samples from A and the rest from B, all
// draws globally without replacement.
struct KscCollection {
    std::size_t k = 0;
    std::size_t n = 0;
    std::string source_a_id, source_b_id;
    std::uint64_t seed = 0;
    std::vector<std::vector<SampleRef>> corpora;  // corpora[i-1] holds c_i

    // Number of A-provenance samples in c_i (1-based i).
    std::size_t a_count(std::size_t i) const;
};

// Planned A-side draw for c_i: round half-up of n*(k-i)/(k-1).
std::size_t ksc_a_count(std::size_t n, std::size_t k, std::size_t i);

KscCollection build_ksc(std::size_t size_a, std::size_t size_b, std::size_t n,
                        std::size_t k, std::uint64_t seed, const std::string& a_id = "A",
                        const std::string& b_id = "B");

// Source corpora plus (optional) matching embeddings; rows align with the
// corpus sentence order.
struct SourcePair {
    const Corpus* a = nullptr;
    const Corpus* b = nullptr;
    const EmbeddedCorpus* ea = nullptr;
    const EmbeddedCorpus* eb = nullptr;
};

Corpus materialize_corpus(const KscCollection& ksc, std::size_t i, const SourcePair& src);
EmbeddedCorpus materialize_embedded(const KscCollection& ksc, std::size_t i,
                                    const SourcePair& src);

struct DistanceEntry {
    std::size_t repetition = 0;
    std::size_t i = 0, j = 0;  // 1-based corpus indices, i < j
    std::size_t level = 0;     // j - i
    double raw = 0.0;
    double z = 0.0;
};

struct DistanceTable {
    std::string metric;
    std::size_t k = 0;
    std::size_t repetitions = 1;
    std::vector<DistanceEntry> entries;
};

// (v - mean) / sample sd (denominator N-1); all zeros when sd == 0.
// Throws for fewer than 2 values.
std::vector<double> normalize_z(const std::vector<double>& values);

// Recomputes the z column from the raw column, pooled across every entry.
void refresh_z(DistanceTable& table);

// Merges per-repetition tables (re-tagging repetition indices) and pools the
// z-normalization across everything.
DistanceTable merge_tables(const std::vector<DistanceTable>& tables);

// Raw distance for every ordered pair (c_i, c_j), i < j, with c_i as the
// reference. `distance` is the metric under test; errors it throws are
// re-raised annotated with the offending (i, j).
DistanceTable compute_distances(
    const KscCollection& ksc, const SourcePair& src, const std::string& metric_name,
    const std::function<double(const Corpus&, const EmbeddedCorpus&, const Corpus&,
                               const EmbeddedCorpus&)>& distance,
    bool needs_embeddings);

// One predicted inequality d(c_q,c_r) <= d(c_i,c_j) licensed by strict
// interval containment (q,r) ⊂ (i,j).
struct Judgement {
    std::size_t q = 0, r = 0;  // inner pair
    std::size_t i = 0, j = 0;  // outer pair
    double weight() const {
        return 1.0 / static_cast<double>((j - i) - (r - q));
    }
};

struct JudgementSet {
    std::size_t k = 0;
    std::vector<Judgement> judgements;
};

// Exhaustive enumeration over [k], outer interval lexicographic then inner.
JudgementSet judgement_set(std::size_t k);

}  // namespace simbench
