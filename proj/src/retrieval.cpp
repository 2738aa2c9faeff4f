#include "glossqe/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "glossqe/error.hpp"

namespace glossqe {

double ifb2_weight(std::uint32_t tf, double doc_len, double qtw, std::uint64_t num_docs,
                   std::uint64_t doc_freq, std::uint64_t coll_freq, double avg_doc_len, double c) {
    if (tf == 0) throw ContractError("ifb2_weight: tf must be >= 1");
    const double N = static_cast<double>(num_docs);
    const double Nt = static_cast<double>(doc_freq);
    const double F = static_cast<double>(coll_freq);
    const double tfn = tf * std::log2(1.0 + c * avg_doc_len / doc_len);
    const double bernoulli = (F + 1.0) / (Nt * (tfn + 1.0));
    const double inf1 = tfn * std::log2((N + 1.0) / (F + 0.5));
    return qtw * bernoulli * inf1;
}

Ranking search(const InvertedIndex& index, const WeightedQuery& query, std::size_t k) {
    if (k == 0) throw ContractError("search: k must be >= 1");
    const auto stats = index.stats();
    std::vector<double> acc(index.num_docs(), 0.0);
    std::vector<char> seen(index.num_docs(), 0);
    std::vector<DocId> touched;

    for (const auto& qt : query.terms) {
        auto id = index.term_id(qt.term);
        if (!id) continue;
        const auto df = index.df(*id);
        const auto cf = index.cf(*id);
        for (const auto& p : index.postings(*id)) {
            acc[p.doc] += ifb2_weight(p.tf, index.doc_length(p.doc), qt.weight, stats.num_docs, df, cf,
                                      stats.avg_doc_length);
            if (!seen[p.doc]) {
                seen[p.doc] = 1;
                touched.push_back(p.doc);
            }
        }
    }

    auto better = [&](DocId a, DocId b) {
        if (acc[a] != acc[b]) return acc[a] > acc[b];
        return index.docno(a) < index.docno(b);
    };
    const auto n = std::min(k, touched.size());
    std::partial_sort(touched.begin(), touched.begin() + static_cast<std::ptrdiff_t>(n), touched.end(), better);

    Ranking out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back({touched[i], index.docno(touched[i]), acc[touched[i]]});
    return out;
}

WeightedQuery title_query(TopicId topic, const std::vector<std::string>& terms) {
    WeightedQuery q{topic, {}};
    for (const auto& t : terms) {
        auto it = std::find_if(q.terms.begin(), q.terms.end(), [&](const WeightedTerm& w) { return w.term == t; });
        if (it == q.terms.end())
            q.terms.push_back({t, 1.0});
        else
            it->weight += 1.0;
    }
    return q;
}

std::vector<RunEntry> to_run_entries(const Ranking& ranking) {
    std::vector<RunEntry> out;
    out.reserve(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i)
        out.push_back({ranking[i].docno, static_cast<int>(i + 1), ranking[i].score});
    return out;
}

}  // namespace glossqe
