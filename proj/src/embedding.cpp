#include "simbench/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "simbench/error.hpp"
#include "simbench/rng.hpp"

namespace simbench {
namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', 'V'};
constexpr unsigned char kVersion = 0x01;

void put_u32le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

void check_finite(const EmbeddedCorpus& ec, const std::string& path) {
    for (float v : ec.data)
        if (!std::isfinite(v)) throw data_error("non-finite embedding value in " + path);
}

}  // namespace

EmbeddedCorpus EmbeddedCorpus::subset(const std::vector<std::size_t>& indices,
                                      const std::string& sub_id) const {
    EmbeddedCorpus out;
    out.source_id = sub_id;
    out.rows = indices.size();
    out.dim = dim;
    out.data.reserve(indices.size() * dim);
    for (std::size_t idx : indices) {
        if (idx >= rows) throw std::out_of_range("embedding row index out of range");
        out.data.insert(out.data.end(), row(idx), row(idx) + dim);
    }
    return out;
}

EmbeddedCorpus hash_embed(const Corpus& corpus, std::size_t dims, std::uint64_t seed) {
    if (dims < 2) throw config_error("hash_embed requires dims >= 2");
    EmbeddedCorpus ec;
    ec.source_id = corpus.id;
    ec.rows = corpus.size();
    ec.dim = dims;
    ec.data.assign(ec.rows * dims, 0.0f);

    std::vector<double> acc(dims);
    for (std::size_t r = 0; r < corpus.size(); ++r) {
        const auto& toks = corpus.tokens[r];
        if (toks.empty()) throw data_error("sentence with zero tokens at row " + std::to_string(r));
        std::fill(acc.begin(), acc.end(), 0.0);
        for (const auto& t : toks) {
            std::uint64_t st = fnv1a64(t) ^ seed;
            std::uint64_t h = splitmix64(st);
            std::size_t bucket = static_cast<std::size_t>(h % dims);
            double sign = (h >> 63) ? 1.0 : -1.0;
            acc[bucket] += sign;
        }
        double norm_sq = 0.0;
        for (double v : acc) norm_sq += v * v;
        if (norm_sq == 0.0) {
            // Signs cancelled exactly; fall back to a one-hot derived from the
            // whole sentence so the row stays usable.
            std::uint64_t st = fnv1a64(corpus.sentences[r]) ^ seed;
            std::uint64_t h = splitmix64(st);
            acc[h % dims] = 1.0;
            norm_sq = 1.0;
        }
        double inv = 1.0 / std::sqrt(norm_sq);
        float* out = ec.data.data() + r * dims;
        for (std::size_t d = 0; d < dims; ++d)
            out[d] = static_cast<float>(acc[d] * inv);
    }
    return ec;
}

void save_embeddings(const EmbeddedCorpus& ec, const std::string& path) {
    std::string buf;
    buf.reserve(9 + ec.data.size() * 4);
    buf.append(kMagic, 4);
    buf.push_back(static_cast<char>(kVersion));
    put_u32le(buf, static_cast<std::uint32_t>(ec.rows));
    put_u32le(buf, static_cast<std::uint32_t>(ec.dim));
    for (float v : ec.data) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_u32le(buf, bits);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw data_error("cannot write embeddings to " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw data_error("short write to " + path);
}

void save_embeddings_csv(const EmbeddedCorpus& ec, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw data_error("cannot write embeddings to " + path);
    out << "dim=" << ec.dim << "\n";
    char buf[64];
    for (std::size_t r = 0; r < ec.rows; ++r) {
        for (std::size_t d = 0; d < ec.dim; ++d) {
            // 9 significant digits round-trip any finite float32 exactly.
            std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(ec.row(r)[d]));
            if (d) out << ',';
            out << buf;
        }
        out << "\n";
    }
    if (!out) throw data_error("short write to " + path);
}

EmbeddedCorpus load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open embeddings file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    EmbeddedCorpus ec;
    ec.source_id = path;

    if (buf.rfind("dim=", 0) == 0) {
        std::istringstream ss(buf);
        std::string line;
        std::getline(ss, line);
        ec.dim = std::strtoull(line.c_str() + 4, nullptr, 10);
        if (ec.dim < 1) throw data_error("bad dim header in " + path);
        while (std::getline(ss, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::size_t count = 0;
            const char* p = line.c_str();
            char* end = nullptr;
            while (*p) {
                float v = std::strtof(p, &end);
                if (end == p) throw data_error("malformed CSV embedding row in " + path);
                ec.data.push_back(v);
                ++count;
                p = end;
                if (*p == ',') ++p;
            }
            if (count != ec.dim)
                throw data_error("CSV embedding row width mismatch in " + path);
            ++ec.rows;
        }
        if (ec.rows == 0) throw data_error("empty embedding file: " + path);
        check_finite(ec, path);
        return ec;
    }

    if (buf.size() < 13 || std::memcmp(buf.data(), kMagic, 4) != 0)
        throw data_error("bad magic in embeddings file: " + path);
    if (static_cast<unsigned char>(buf[4]) != kVersion)
        throw data_error("unsupported embeddings version in " + path);
    const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
    ec.rows = get_u32le(p + 5);
    ec.dim = get_u32le(p + 9);
    const std::size_t need = 13 + ec.rows * ec.dim * 4;
    if (ec.rows == 0 || ec.dim == 0 || buf.size() != need)
        throw data_error("truncated or malformed embeddings payload in " + path);
    ec.data.resize(ec.rows * ec.dim);
    for (std::size_t i = 0; i < ec.data.size(); ++i) {
        std::uint32_t bits = get_u32le(p + 13 + i * 4);
        std::memcpy(&ec.data[i], &bits, 4);
    }
    check_finite(ec, path);
    return ec;
}

}  // namespace simbench
