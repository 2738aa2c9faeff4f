#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glossqe {

struct Document {
    std::string docno;
    std::string text;
    bool operator==(const Document&) const = default;
};

using TopicId = int;

struct Topic {
    TopicId id = 0;
    std::string title;
    bool operator==(const Topic&) const = default;
};

/// (topic, docno) -> relevance grade. Grades are >= 0; relevant means grade > 0.
class QrelSet {
public:
    void set(TopicId topic, std::string docno, int grade) {
        judgments_[topic][std::move(docno)] = grade;
    }
    /// Grade of a judged document, -1 when unjudged.
    int grade(TopicId topic, std::string_view docno) const;
    bool is_relevant(TopicId topic, std::string_view docno) const { return grade(topic, docno) > 0; }
    std::size_t num_relevant(TopicId topic) const;
    std::size_t size() const;
    std::vector<TopicId> topics() const;
    const std::map<std::string, int, std::less<>>* judgments(TopicId topic) const;

private:
    std::map<TopicId, std::map<std::string, int, std::less<>>> judgments_;
};

struct RunEntry {
    std::string docno;
    int rank = 0;
    double score = 0.0;
    bool operator==(const RunEntry&) const = default;
};

/// Per-topic ranked lists, ranks 1..k, scores non-increasing.
using RunFile = std::map<TopicId, std::vector<RunEntry>>;

/// Reads `<DOC>...</DOC>` blocks. Tags become whitespace, `&amp; &lt; &gt;`
/// are decoded, and whitespace runs collapse to a single space.
std::vector<Document> parse_trec_docs(std::string_view content);
std::vector<Document> parse_trec_docs(std::istream& in);

std::vector<Topic> parse_topics(std::string_view content);
std::vector<Topic> parse_topics(std::istream& in);

QrelSet parse_qrels(std::istream& in);

/// Throws ContractError when ranks are not 1..k or scores increase.
void validate_run(const RunFile& run);
void write_run(std::ostream& out, const RunFile& run, std::string_view tag);
RunFile read_run(std::istream& in);

/// Reads a whole file, transparently gunzipping `.gz` input.
std::string read_file(const std::string& path);

}  // namespace glossqe
