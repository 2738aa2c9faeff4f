#include "glossqe/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace glossqe {
namespace {

// Relevance flag per rank, skipping repeated docnos.
std::vector<bool> relevance_flags(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic) {
    std::vector<bool> flags;
    flags.reserve(ranking.size());
    std::set<std::string_view> seen;
    for (const auto& e : ranking) {
        if (!seen.insert(e.docno).second) continue;
        flags.push_back(qrels.is_relevant(topic, e.docno));
    }
    return flags;
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string pct_delta(double base, double value) {
    if (base == 0.0) return value == 0.0 ? "(+0.0%)" : "(n/a)";
    return fmt("(%+.1f%%)", 100.0 * (value - base) / base);
}

}  // namespace

std::optional<double> average_precision(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic) {
    const auto num_rel = qrels.num_relevant(topic);
    if (num_rel == 0) return std::nullopt;
    const auto flags = relevance_flags(ranking, qrels, topic);
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (!flags[i]) continue;
        ++hits;
        sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
    return sum / static_cast<double>(num_rel);
}

double precision_at(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic, std::size_t k) {
    const auto flags = relevance_flags(ranking, qrels, topic);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < flags.size() && i < k; ++i) hits += flags[i];
    return static_cast<double>(hits) / static_cast<double>(k);
}

std::size_t relevant_retrieved(std::span<const RunEntry> ranking, const QrelSet& qrels, TopicId topic) {
    const auto flags = relevance_flags(ranking, qrels, topic);
    return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
}

std::map<TopicId, double> EvalReport::ap_by_topic() const {
    std::map<TopicId, double> out;
    for (const auto& t : per_topic) out[t.topic] = t.ap;
    return out;
}

EvalReport aggregate(std::vector<TopicEval> per_topic) {
    EvalReport r;
    std::sort(per_topic.begin(), per_topic.end(), [](const auto& a, const auto& b) { return a.topic < b.topic; });
    r.per_topic = std::move(per_topic);
    if (r.per_topic.empty()) return r;
    double ap_sum = 0.0, log_sum = 0.0, p10_sum = 0.0;
    for (const auto& t : r.per_topic) {
        ap_sum += t.ap;
        log_sum += std::log(std::max(t.ap, kGmapFloor));
        p10_sum += t.p10;
        r.rel_ret += t.rel_ret;
        r.num_rel += t.num_rel;
    }
    const auto n = static_cast<double>(r.per_topic.size());
    r.map = ap_sum / n;
    r.gm_map = std::exp(log_sum / n);
    r.p10 = p10_sum / n;
    return r;
}

EvalReport evaluate(const RunFile& run, const QrelSet& qrels, std::span<const TopicId> topics) {
    std::vector<TopicId> ids(topics.begin(), topics.end());
    if (ids.empty())
        for (const auto& [t, _] : run) ids.push_back(t);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    static const std::vector<RunEntry> kEmpty;
    std::vector<TopicEval> per_topic;
    std::vector<TopicId> skipped;
    for (auto topic : ids) {
        auto it = run.find(topic);
        const auto& ranking = it == run.end() ? kEmpty : it->second;
        auto ap = average_precision(ranking, qrels, topic);
        if (!ap) {
            skipped.push_back(topic);
            continue;
        }
        per_topic.push_back({topic, *ap, precision_at(ranking, qrels, topic, 10),
                             relevant_retrieved(ranking, qrels, topic), qrels.num_relevant(topic)});
    }
    auto report = aggregate(std::move(per_topic));
    report.skipped = std::move(skipped);
    return report;
}

double pct_improved(const std::map<TopicId, double>& baseline, const std::map<TopicId, double>& method,
                    double threshold) {
    std::vector<TopicId> only_base, only_method;
    for (const auto& [t, _] : baseline)
        if (!method.count(t)) only_base.push_back(t);
    for (const auto& [t, _] : method)
        if (!baseline.count(t)) only_method.push_back(t);
    if (!only_base.empty() || !only_method.empty()) {
        std::ostringstream msg;
        msg << "topic sets differ; baseline only:";
        for (auto t : only_base) msg << ' ' << t;
        msg << "; method only:";
        for (auto t : only_method) msg << ' ' << t;
        throw std::invalid_argument(msg.str());
    }
    if (baseline.empty()) return 0.0;
    std::size_t improved = 0;
    for (const auto& [t, base] : baseline)
        if (method.at(t) > base * (1.0 + threshold)) ++improved;
    return 100.0 * static_cast<double>(improved) / static_cast<double>(baseline.size());
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // The continued fraction converges fast for x < (a+1)/(a+b+2); use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-16;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double f = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        f *= d * c;
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return std::exp(log_front) * f / a;
}

double student_t_cdf(double t, double dof) {
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
    return t >= 0 ? 1.0 - tail : tail;
}

TTest paired_t(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("paired_t: samples differ in length");
    if (a.size() < 2) throw std::invalid_argument("paired_t: need at least two pairs");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const double m = mean(diff);
    double ss = 0.0;
    for (double d : diff) ss += (d - m) * (d - m);
    const auto n = static_cast<double>(diff.size());
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0) {
        if (m == 0.0) return {0.0, 1.0};
        return {m > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity(), 0.0};
    }
    const double t = m / (sd / std::sqrt(n));
    const double dof = n - 1.0;
    const double p = regularized_incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
    return {t, std::min(1.0, p)};
}

Comparison compare(const EvalReport& baseline, const EvalReport& method) {
    Comparison cmp{baseline, method, 0.0, {}};
    const auto base_ap = baseline.ap_by_topic();
    const auto method_ap = method.ap_by_topic();
    cmp.pct_improved = pct_improved(base_ap, method_ap);
    if (base_ap.size() >= 2) {
        std::vector<double> a, b;
        for (const auto& [t, ap] : method_ap) {
            a.push_back(ap);
            b.push_back(base_ap.at(t));
        }
        cmp.ttest = paired_t(a, b);
    }
    return cmp;
}

std::string format_report(const EvalReport& report, const std::string& label) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "%-16s%14s\n", "", label.c_str());
    out << line;
    std::snprintf(line, sizeof line, "%-16s%14.4f\n", "MAP", report.map);
    out << line;
    std::snprintf(line, sizeof line, "%-16s%14.4f\n", "GM_MAP", report.gm_map);
    out << line;
    std::snprintf(line, sizeof line, "%-16s%14.4f\n", "P@10", report.p10);
    out << line;
    std::snprintf(line, sizeof line, "%-16s%14zu\n", "#rel_ret", report.rel_ret);
    out << line;
    std::snprintf(line, sizeof line, "%-16s%14zu\n", "#topics", report.per_topic.size());
    out << line;
    return out.str();
}

std::string format_comparison(const Comparison& cmp, const std::string& baseline_label,
                              const std::string& method_label) {
    const bool significant = cmp.ttest.p < 0.05 && cmp.ttest.t > 0;
    const char* mark = significant ? "*" : " ";
    std::ostringstream out;
    char line[160];
    auto row = [&](const char* name, double base, double value, bool flag) {
        std::string m = fmt("%.4f ", value) + pct_delta(base, value) + (flag ? mark : " ");
        std::snprintf(line, sizeof line, "%-16s%14.4f%24s\n", name, base, m.c_str());
        out << line;
    };
    std::snprintf(line, sizeof line, "%-16s%14s%24s\n", "", baseline_label.c_str(), method_label.c_str());
    out << line;
    row("MAP", cmp.baseline.map, cmp.method.map, true);
    row("GM_MAP", cmp.baseline.gm_map, cmp.method.gm_map, false);
    row("P@10", cmp.baseline.p10, cmp.method.p10, false);
    std::string rr = std::to_string(cmp.method.rel_ret) + " " +
                     pct_delta(static_cast<double>(cmp.baseline.rel_ret), static_cast<double>(cmp.method.rel_ret)) + " ";
    std::snprintf(line, sizeof line, "%-16s%14zu%24s\n", "#rel_ret", cmp.baseline.rel_ret, rr.c_str());
    out << line;
    std::string imp = fmt("%.1f%%  ", cmp.pct_improved);
    std::snprintf(line, sizeof line, "%-16s%14s%24s\n", "> baseline on", "-", imp.c_str());
    out << line;
    std::string tt = fmt("t=%.4f ", cmp.ttest.t) + fmt("p=%.4f  ", cmp.ttest.p);
    std::snprintf(line, sizeof line, "%-16s%14s%24s\n", "paired t (MAP)", "", tt.c_str());
    out << line;
    out << "* significant improvement in MAP (two-tailed paired t-test, p < 0.05)\n";
    return out.str();
}

}  // namespace glossqe
