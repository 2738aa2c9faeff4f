#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glossqe/corpus.hpp"

namespace glossqe {

/// Floor applied to AP before taking logs for GM_MAP (trec_eval convention).
inline constexpr double kGmapFloor = 1e-5;
/// Relative AP gain a topic needs to count as improved over the baseline.
inline constexpr double kImprovementThreshold = 0.05;

/// Mean over the topic's judged-relevant documents of the precision at the
/// rank each is retrieved; unretrieved relevant documents contribute 0.
/// Nullopt when the topic has no judged-relevant document. Repeated docnos
/// after their first occurrence are ignored.
std::optional<double> average_precision(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic);
/// Relevant documents in the top k divided by k.
double precision_at(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic, std::size_t k);
std::size_t relevant_retrieved(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic);

struct TopicEval {
    TopicId topic = 0;
    double ap = 0.0;
    double p10 = 0.0;
    std::size_t rel_ret = 0;
    std::size_t num_rel = 0;
};

struct TTest {
    double t = 0.0;
    double p = 1.0;  // two-tailed
};

struct EvalReport {
    std::vector<TopicEval> per_topic;  // ascending topic id
    double map = 0.0;
    double gm_map = 0.0;
    double p10 = 0.0;
    std::size_t rel_ret = 0;
    std::size_t num_rel = 0;
    std::vector<TopicId> skipped;  // topics without judged-relevant documents

    std::map<TopicId, double> ap_by_topic() const;
};

/// MAP, GM_MAP (floored at 1e-5), mean P@10, and summed rel_ret.
EvalReport aggregate(std::vector<TopicEval> per_topic);

/// Evaluates the given topics (all run topics when empty). Topics without a
/// relevant judgment are listed in `skipped`; topics missing from the run
/// score zero.
EvalReport evaluate(const RunFile& run, const QrelSet& qrels, std::span<const TopicId> topics = {});

/// Percentage of topics whose AP beats the baseline AP by more than
/// `threshold` (relative). Throws std::invalid_argument listing the topics
/// when the two sets differ.
double pct_improved(const std::map<TopicId, double>& baseline, const std::map<TopicId, double>& method,
                    double threshold = kImprovementThreshold);

/// Two-tailed paired t-test on the differences a[i] - b[i].
/// All-zero differences give t = 0, p = 1. Constant non-zero differences
/// give an infinite t and p = 0. Throws std::invalid_argument for fewer
/// than two pairs or mismatched lengths.
TTest paired_t(std::span<const double> a, std::span<const double> b);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);
/// P(T <= t) for Student's t with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

struct Comparison {
    EvalReport baseline;
    EvalReport method;
    double pct_improved = 0.0;
    TTest ttest;  // per-topic AP, method vs baseline
};

/// Throws std::invalid_argument when the evaluated topic sets differ.
Comparison compare(const EvalReport& baseline, const EvalReport& method);

/// Fixed-width report: MAP, GM_MAP, P@10, #rel_ret and, with a baseline,
/// percentage deltas, "> baseline on" and a `*` for p < 0.05.
std::string format_report(const EvalReport& report, const std::string& label);
std::string format_comparison(const Comparison& cmp, const std::string& baseline_label,
                              const std::string& method_label);

}  // namespace glossqe
