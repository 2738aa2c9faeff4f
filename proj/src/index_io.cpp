// On-disk index layout (all integers little-endian); see docs/index-format.md.
//
//   magic    8 bytes  "GLQEIDX\0"
//   version  u32
//   N        u64      number of documents
//   T        u64      number of terms
//   tokens   u64      collection length
//   N x { str docno, u32 length }
//   T x { str term, str surface, u32 df, u64 cf, df x { varint doc_gap, varint tf } }
//   trailer  8 bytes  "GLQEEND\0"
//
// str is a u32 byte count followed by the bytes. doc_gap is the first doc id,
// then the difference to the previous posting's doc id.

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include "glossqe/error.hpp"
#include "glossqe/index.hpp"

namespace glossqe {
namespace {

constexpr std::array<char, 8> kMagic{'G', 'L', 'Q', 'E', 'I', 'D', 'X', '\0'};
constexpr std::array<char, 8> kTrailer{'G', 'L', 'Q', 'E', 'E', 'N', 'D', '\0'};

class Writer {
public:
    void raw(const char* p, std::size_t n) { buf_.append(p, n); }
    template <typename T>
    void le(T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void varint(std::uint64_t v) {
        while (v >= 0x80) {
            buf_.push_back(static_cast<char>((v & 0x7f) | 0x80));
            v >>= 7;
        }
        buf_.push_back(static_cast<char>(v));
    }
    void str(const std::string& s) {
        le(static_cast<std::uint32_t>(s.size()));
        raw(s.data(), s.size());
    }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}

    void raw(char* p, std::size_t n) {
        need(n);
        std::memcpy(p, data_.data() + pos_, n);
        pos_ += n;
    }
    template <typename T>
    T le() {
        need(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<T>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += sizeof(T);
        return v;
    }
    std::uint64_t varint() {
        std::uint64_t v = 0;
        for (int shift = 0; shift < 64; shift += 7) {
            need(1);
            auto b = static_cast<unsigned char>(data_[pos_++]);
            v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
            if (!(b & 0x80)) return v;
        }
        throw DataError("corrupt varint in index file");
    }
    std::string str() {
        auto n = le<std::uint32_t>();
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool at_end() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const {
        if (data_.size() - pos_ < n)
            throw DataError("truncated index file (format version " +
                            std::to_string(InvertedIndex::kFormatVersion) + " expected)");
    }

    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

void InvertedIndex::save(const std::string& path) const {
    Writer w;
    w.raw(kMagic.data(), kMagic.size());
    w.le(kFormatVersion);
    w.le(static_cast<std::uint64_t>(docnos_.size()));
    w.le(static_cast<std::uint64_t>(terms_.size()));
    w.le(total_tokens_);
    for (std::size_t d = 0; d < docnos_.size(); ++d) {
        w.str(docnos_[d]);
        w.le(doc_lengths_[d]);
    }
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        auto list = postings(static_cast<TermId>(t));
        w.str(terms_[t]);
        w.str(surfaces_[t]);
        w.le(static_cast<std::uint32_t>(list.size()));
        w.le(cf_[t]);
        DocId prev = 0;
        for (const auto& p : list) {
            w.varint(p.doc - prev);
            w.varint(p.tf);
            prev = p.doc;
        }
    }
    w.raw(kTrailer.data(), kTrailer.size());

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write index file " + path);
    out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
    if (!out) throw DataError("write failed for index file " + path);
}

InvertedIndex InvertedIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open index file " + path);
    Reader r(std::string(std::istreambuf_iterator<char>(in), {}));

    std::array<char, 8> magic{};
    r.raw(magic.data(), magic.size());
    if (magic != kMagic) throw DataError(path + " is not an index file");
    auto version = r.le<std::uint32_t>();
    if (version != kFormatVersion)
        throw DataError("index file " + path + " has format version " + std::to_string(version) +
                        ", expected version " + std::to_string(kFormatVersion));

    InvertedIndex idx;
    auto n_docs = r.le<std::uint64_t>();
    auto n_terms = r.le<std::uint64_t>();
    idx.total_tokens_ = r.le<std::uint64_t>();

    std::uint64_t length_sum = 0;
    for (std::uint64_t d = 0; d < n_docs; ++d) {
        idx.docnos_.push_back(r.str());
        idx.doc_lengths_.push_back(r.le<std::uint32_t>());
        length_sum += idx.doc_lengths_.back();
        if (!idx.doc_lookup_.emplace(idx.docnos_.back(), static_cast<DocId>(d)).second)
            throw DataError("index file " + path + ": duplicate docno " + idx.docnos_.back());
    }
    if (length_sum != idx.total_tokens_) throw DataError("index file " + path + ": document lengths disagree with collection length");

    std::uint64_t cf_sum = 0;
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        idx.terms_.push_back(r.str());
        idx.surfaces_.push_back(r.str());
        auto df = r.le<std::uint32_t>();
        auto cf = r.le<std::uint64_t>();
        if (df == 0 || df > n_docs || cf < df)
            throw DataError("index file " + path + ": inconsistent statistics for term " + idx.terms_.back());
        std::uint64_t doc = 0;
        for (std::uint32_t i = 0; i < df; ++i) {
            auto gap = r.varint();
            if (i > 0 && gap == 0) throw DataError("index file " + path + ": unsorted postings");
            doc += gap;
            auto tf = r.varint();
            if (doc >= n_docs || tf == 0) throw DataError("index file " + path + ": posting out of range");
            idx.postings_.push_back({static_cast<DocId>(doc), static_cast<std::uint32_t>(tf)});
        }
        idx.cf_.push_back(cf);
        cf_sum += cf;
        idx.post_offsets_.push_back(idx.postings_.size());
    }
    if (cf_sum != idx.total_tokens_) throw DataError("index file " + path + ": term counts disagree with collection length");

    std::array<char, 8> trailer{};
    r.raw(trailer.data(), trailer.size());
    if (trailer != kTrailer || !r.at_end())
        throw DataError("index file " + path + " is corrupt (format version " + std::to_string(kFormatVersion) + " expected)");
    idx.finalize();
    return idx;
}

}  // namespace glossqe
