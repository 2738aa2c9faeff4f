#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glossqe/corpus.hpp"
#include "glossqe/index.hpp"

namespace glossqe {

/// Normalisation-2 parameter of IFB2.
inline constexpr double kIfb2C = 1.0;

/// DFR IFB2 weight of one query term in one document:
///   tfn = tf * log2(1 + c * avg_dl / doc_len)
///   w   = qtw * (F + 1) / (N_t * (tfn + 1)) * tfn * log2((N + 1) / (F + 0.5))
/// Throws ContractError for tf == 0.
double ifb2_weight(std::uint32_t tf, double doc_len, double qtw, std::uint64_t num_docs,
                   std::uint64_t doc_freq, std::uint64_t coll_freq, double avg_doc_len, double c = kIfb2C);

struct WeightedTerm {
    std::string term;
    double weight = 0.0;
    bool operator==(const WeightedTerm&) const = default;
};

struct WeightedQuery {
    TopicId topic = 0;
    std::vector<WeightedTerm> terms;
    bool operator==(const WeightedQuery&) const = default;
};

struct ScoredDoc {
    DocId doc = 0;
    std::string docno;
    double score = 0.0;
};

/// Scores descending, ties by docno ascending.
using Ranking = std::vector<ScoredDoc>;

/// Sums IFB2 weights of the query terms each document contains and returns
/// the top k. Unindexed query terms are ignored; a query with no indexed
/// term yields an empty ranking.
Ranking search(const InvertedIndex& index, const WeightedQuery& query, std::size_t k);

/// Unit weights for each analyzed title term, in title order. Repeated
/// words accumulate weight.
WeightedQuery title_query(TopicId topic, const std::vector<std::string>& terms);

std::vector<RunEntry> to_run_entries(const Ranking& ranking);

}  // namespace glossqe
