#include "glossqe/index.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "glossqe/error.hpp"

namespace glossqe {
namespace {

struct PartialTerm {
    std::vector<Posting> postings;  // local doc ids
    std::uint64_t cf = 0;
    std::map<std::string, std::uint64_t> surface_counts;
};

struct Partial {
    std::vector<std::uint32_t> lengths;
    std::map<std::string, PartialTerm> terms;
};

Partial index_partition(std::span<const Document> docs, const Analyzer& analyzer) {
    Partial part;
    part.lengths.reserve(docs.size());
    std::map<std::string, std::uint32_t> tfs;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        tfs.clear();
        auto tokens = analyzer.analyze_with_surface(docs[i].text);
        for (auto& tok : tokens) {
            ++tfs[tok.term];
            auto& entry = part.terms[tok.term];
            ++entry.surface_counts[tok.surface];
        }
        for (const auto& [term, tf] : tfs) {
            auto& entry = part.terms[term];
            entry.postings.push_back({static_cast<DocId>(i), tf});
            entry.cf += tf;
        }
        part.lengths.push_back(static_cast<std::uint32_t>(tokens.size()));
    }
    return part;
}

}  // namespace

InvertedIndex InvertedIndex::build(std::span<const Document> docs, const Analyzer& analyzer,
                                   unsigned threads) {
    InvertedIndex idx;
    idx.docnos_.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!idx.doc_lookup_.emplace(docs[i].docno, static_cast<DocId>(i)).second)
            throw DataError("duplicate docno '" + docs[i].docno + "'");
        idx.docnos_.push_back(docs[i].docno);
    }

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(docs.size(), 1))));
    std::vector<Partial> parts(threads);
    std::vector<std::size_t> starts(threads + 1);
    for (unsigned p = 0; p <= threads; ++p) starts[p] = docs.size() * p / threads;
    {
        std::vector<std::jthread> pool;
        for (unsigned p = 0; p < threads; ++p)
            pool.emplace_back([&, p] {
                parts[p] = index_partition(docs.subspan(starts[p], starts[p + 1] - starts[p]), analyzer);
            });
    }

    // k-way merge over the lexicographically sorted partial vocabularies
    std::map<std::string, std::vector<std::pair<unsigned, PartialTerm*>>> merged;
    for (unsigned p = 0; p < threads; ++p) {
        for (auto& len : parts[p].lengths) {
            idx.doc_lengths_.push_back(len);
            idx.total_tokens_ += len;
        }
        for (auto& [term, entry] : parts[p].terms) merged[term].emplace_back(p, &entry);
    }
    idx.terms_.reserve(merged.size());
    for (auto& [term, pieces] : merged) {
        std::map<std::string, std::uint64_t> surface_counts;
        std::uint64_t cf = 0;
        for (auto& [p, entry] : pieces) {
            for (const auto& post : entry->postings)
                idx.postings_.push_back({static_cast<DocId>(post.doc + starts[p]), post.tf});
            cf += entry->cf;
            for (const auto& [s, c] : entry->surface_counts) surface_counts[s] += c;
        }
        auto best = surface_counts.begin();
        for (auto it = surface_counts.begin(); it != surface_counts.end(); ++it)
            if (it->second > best->second) best = it;
        idx.terms_.push_back(term);
        idx.surfaces_.push_back(best == surface_counts.end() ? term : best->first);
        idx.cf_.push_back(cf);
        idx.post_offsets_.push_back(idx.postings_.size());
    }
    idx.finalize();
    return idx;
}

void InvertedIndex::finalize() {
    term_lookup_.clear();
    term_lookup_.reserve(terms_.size());
    for (std::size_t t = 0; t < terms_.size(); ++t) term_lookup_.emplace(terms_[t], static_cast<TermId>(t));
    if (doc_lookup_.size() != docnos_.size()) {
        doc_lookup_.clear();
        for (std::size_t d = 0; d < docnos_.size(); ++d) doc_lookup_.emplace(docnos_[d], static_cast<DocId>(d));
    }

    std::vector<std::size_t> counts(docnos_.size() + 1, 0);
    for (const auto& p : postings_) ++counts[p.doc + 1];
    fwd_offsets_.assign(docnos_.size() + 1, 0);
    for (std::size_t d = 0; d < docnos_.size(); ++d) fwd_offsets_[d + 1] = fwd_offsets_[d] + counts[d + 1];
    fwd_.assign(postings_.size(), DocTerm{0, 0});
    std::vector<std::size_t> cursor(fwd_offsets_.begin(), fwd_offsets_.end() - 1);
    for (std::size_t t = 0; t < terms_.size(); ++t)
        for (const auto& p : postings(static_cast<TermId>(t))) fwd_[cursor[p.doc]++] = {static_cast<TermId>(t), p.tf};
}

CollectionStats InvertedIndex::stats() const {
    CollectionStats s;
    s.num_docs = num_docs();
    s.total_tokens = total_tokens_;
    s.avg_doc_length = s.num_docs ? static_cast<double>(total_tokens_) / static_cast<double>(s.num_docs) : 0.0;
    return s;
}

std::optional<TermId> InvertedIndex::term_id(std::string_view term) const {
    auto it = term_lookup_.find(term);
    if (it == term_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<DocId> InvertedIndex::doc_id(std::string_view docno) const {
    auto it = doc_lookup_.find(docno);
    if (it == doc_lookup_.end()) return std::nullopt;
    return it->second;
}

std::uint32_t InvertedIndex::df(std::string_view term) const {
    auto id = term_id(term);
    return id ? df(*id) : 0;
}

std::uint64_t InvertedIndex::cf(std::string_view term) const {
    auto id = term_id(term);
    return id ? cf(*id) : 0;
}

std::vector<std::pair<std::string, std::uint32_t>> InvertedIndex::postings(std::string_view term) const {
    std::vector<std::pair<std::string, std::uint32_t>> out;
    if (auto id = term_id(term))
        for (const auto& p : postings(*id)) out.emplace_back(docnos_[p.doc], p.tf);
    return out;
}

std::uint32_t InvertedIndex::tf(DocId d, TermId t) const {
    auto terms = doc_terms(d);
    auto it = std::lower_bound(terms.begin(), terms.end(), t,
                               [](const DocTerm& a, TermId b) { return a.term < b; });
    return it != terms.end() && it->term == t ? it->tf : 0;
}

}  // namespace glossqe
