#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace simbench {

// A sentence corpus with eagerly tokenized text. Token lists are a pure
// function of the sentences; sentences that tokenize to nothing are never
// stored, so every entry has at least one token.
struct Corpus {
    std::string id;
    std::vector<std::string> sentences;
    std::vector<std::vector<std::string>> tokens;

    std::size_t size() const { return sentences.size(); }

    // Builds from raw sentences, dropping any that tokenize to nothing.
    static Corpus from_sentences(std::string id, std::vector<std::string> sentences);

    // Sub-corpus at the given sentence indices, order preserved.
    Corpus subset(const std::vector<std::size_t>& indices, const std::string& sub_id) const;
};

enum class CorpusFormat { jsonl, txt, csv };

CorpusFormat corpus_format_from_string(const std::string& name);

// Detects from the file extension (.jsonl/.json -> jsonl, .csv -> csv,
// anything else -> txt).
CorpusFormat guess_corpus_format(const std::string& path);

// Lowercased tokens split on Unicode whitespace with leading/trailing ASCII
// punctuation stripped. Tokens that consist only of punctuation vanish.
std::vector<std::string> tokenize(const std::string& text);

// Loads a corpus; blank lines and sentences with no tokens are skipped.
// jsonl records must carry a string "text" field; csv uses the "text" column
// when the header names one, otherwise the first column.
// Throws data_error on unreadable files, malformed records (reported with
// their line number) or zero usable sentences.
Corpus load_corpus(const std::string& path, CorpusFormat format);

}  // namespace simbench
