#include "simbench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "simbench/error.hpp"

namespace simbench {
namespace {

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0a: case 0x0b: case 0x0c: case 0x0d:
        case 0x20: case 0x85: case 0xa0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

// Minimal UTF-8 decoding; invalid bytes are passed through as single
// codepoints so tokenization never fails on arbitrary input.
char32_t decode_utf8(const std::string& s, std::size_t& i) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra = (c >= 0xf0) ? 3 : (c >= 0xe0) ? 2 : (c >= 0xc0) ? 1 : 0;
    if (extra == 0 || i + extra >= s.size()) {
        ++i;
        return c;
    }
    char32_t cp = c & (0x3f >> extra);
    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xc0) != 0x80) {
            ++i;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3f);
    }
    i += 1 + extra;
    return cp;
}

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

void strip_punct(std::string& tok) {
    std::size_t b = 0, e = tok.size();
    while (b < e && is_ascii_punct(tok[b])) ++b;
    while (e > b && is_ascii_punct(tok[e - 1])) --e;
    tok = tok.substr(b, e - b);
}

// Unquotes one CSV line into fields, handling quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string lower_ascii(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    std::size_t i = 0;
    auto flush = [&] {
        strip_punct(cur);
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
    };
    while (i < text.size()) {
        std::size_t start = i;
        char32_t cp = decode_utf8(text, i);
        if (is_unicode_space(cp)) {
            flush();
        } else if (cp < 0x80) {
            cur += static_cast<char>(std::tolower(static_cast<int>(cp)));
        } else {
            cur.append(text, start, i - start);
        }
    }
    flush();
    return tokens;
}

Corpus Corpus::from_sentences(std::string id, std::vector<std::string> sentences) {
    Corpus c;
    c.id = std::move(id);
    for (auto& s : sentences) {
        auto toks = tokenize(s);
        if (toks.empty()) continue;
        c.sentences.push_back(std::move(s));
        c.tokens.push_back(std::move(toks));
    }
    return c;
}

Corpus Corpus::subset(const std::vector<std::size_t>& indices, const std::string& sub_id) const {
    Corpus c;
    c.id = sub_id;
    c.sentences.reserve(indices.size());
    c.tokens.reserve(indices.size());
    for (std::size_t idx : indices) {
        c.sentences.push_back(sentences.at(idx));
        c.tokens.push_back(tokens.at(idx));
    }
    return c;
}

CorpusFormat corpus_format_from_string(const std::string& name) {
    std::string n = lower_ascii(name);
    if (n == "jsonl") return CorpusFormat::jsonl;
    if (n == "txt") return CorpusFormat::txt;
    if (n == "csv") return CorpusFormat::csv;
    throw config_error("unknown corpus format: " + name);
}

CorpusFormat guess_corpus_format(const std::string& path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : lower_ascii(path.substr(dot + 1));
    if (ext == "jsonl" || ext == "json") return CorpusFormat::jsonl;
    if (ext == "csv") return CorpusFormat::csv;
    return CorpusFormat::txt;
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open corpus file: " + path);

    std::vector<std::string> sentences;
    std::string line;
    std::size_t line_no = 0;

    if (format == CorpusFormat::csv) {
        std::size_t text_col = 0;
        bool have_header = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto fields = split_csv_line(line);
            if (!have_header) {
                have_header = true;
                bool named = false;
                for (std::size_t c = 0; c < fields.size(); ++c) {
                    if (lower_ascii(fields[c]) == "text") {
                        text_col = c;
                        named = true;
                        break;
                    }
                }
                if (named) continue;  // header row consumed
                // No "text" header: treat the first row as data, column 0.
            }
            if (text_col >= fields.size())
                throw data_error(path + ":" + std::to_string(line_no) +
                                 ": missing text column");
            sentences.push_back(fields[text_col]);
        }
    } else {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (format == CorpusFormat::jsonl) {
                nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
                if (rec.is_discarded())
                    throw data_error(path + ":" + std::to_string(line_no) +
                                     ": malformed JSON record");
                if (!rec.contains("text") || !rec["text"].is_string())
                    throw data_error(path + ":" + std::to_string(line_no) +
                                     ": record has no string \"text\" field");
                sentences.push_back(rec["text"].get<std::string>());
            } else {
                sentences.push_back(line);
            }
        }
    }

    Corpus c = Corpus::from_sentences(path, std::move(sentences));
    if (c.size() == 0) throw data_error("no usable sentences in " + path);
    return c;
}

}  // namespace simbench
