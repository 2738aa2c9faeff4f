#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glossqe/corpus.hpp"
#include "glossqe/textproc.hpp"

namespace glossqe {

using DocId = std::uint32_t;
using TermId = std::uint32_t;

struct Posting {
    DocId doc;
    std::uint32_t tf;
    bool operator==(const Posting&) const = default;
};

/// One entry of a document's term vector.
struct DocTerm {
    TermId term;
    std::uint32_t tf;
};

struct CollectionStats {
    std::uint64_t num_docs = 0;
    std::uint64_t total_tokens = 0;
    double avg_doc_length = 0.0;
};

/// Immutable inverted index with the collection statistics the scoring
/// functions need. Term ids follow lexicographic term order; document ids
/// follow input order.
class InvertedIndex {
public:
    static constexpr std::uint32_t kFormatVersion = 1;

    InvertedIndex() = default;

    /// Documents are split into `threads` contiguous partitions, indexed
    /// independently, and merged in order; the result does not depend on
    /// the thread count. Throws DataError on a duplicate docno.
    static InvertedIndex build(std::span<const Document> docs, const Analyzer& analyzer,
                               unsigned threads = 1);

    /// Throws DataError when the file cannot be written.
    void save(const std::string& path) const;
    /// Throws DataError on a bad magic number, version mismatch, truncation
    /// or inconsistent statistics.
    static InvertedIndex load(const std::string& path);

    std::uint64_t num_docs() const { return doc_lengths_.size(); }
    std::uint64_t total_tokens() const { return total_tokens_; }
    std::size_t num_terms() const { return terms_.size(); }
    CollectionStats stats() const;

    std::optional<TermId> term_id(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_[id]; }
    /// Most frequent surface word observed for this term (ties: smallest).
    const std::string& surface(TermId id) const { return surfaces_[id]; }
    std::uint32_t df(TermId id) const { return static_cast<std::uint32_t>(postings(id).size()); }
    std::uint64_t cf(TermId id) const { return cf_[id]; }
    std::uint32_t df(std::string_view term) const;
    std::uint64_t cf(std::string_view term) const;

    std::span<const Posting> postings(TermId id) const {
        return {postings_.data() + post_offsets_[id], postings_.data() + post_offsets_[id + 1]};
    }
    /// (docno, tf) pairs in document order; empty for unseen terms.
    std::vector<std::pair<std::string, std::uint32_t>> postings(std::string_view term) const;

    const std::string& docno(DocId d) const { return docnos_[d]; }
    std::uint32_t doc_length(DocId d) const { return doc_lengths_[d]; }
    std::optional<DocId> doc_id(std::string_view docno) const;
    /// The document's terms sorted by term id.
    std::span<const DocTerm> doc_terms(DocId d) const {
        return {fwd_.data() + fwd_offsets_[d], fwd_.data() + fwd_offsets_[d + 1]};
    }
    /// tf of a term in a document, 0 when absent.
    std::uint32_t tf(DocId d, TermId t) const;

private:
    void finalize();

    std::vector<std::string> docnos_;
    std::vector<std::uint32_t> doc_lengths_;
    std::uint64_t total_tokens_ = 0;

    std::vector<std::string> terms_;
    std::vector<std::string> surfaces_;
    std::vector<std::uint64_t> cf_;
    std::vector<std::size_t> post_offsets_{0};
    std::vector<Posting> postings_;

    // derived on build/load
    std::unordered_map<std::string, TermId, StringHash, std::equal_to<>> term_lookup_;
    std::unordered_map<std::string, DocId, StringHash, std::equal_to<>> doc_lookup_;
    std::vector<std::size_t> fwd_offsets_{0};
    std::vector<DocTerm> fwd_;
};

}  // namespace glossqe
