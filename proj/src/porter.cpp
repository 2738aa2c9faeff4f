// Porter stemmer. Mirrors the structure of Martin Porter's reference C
// implementation, including its two departures from the 1980 paper
// (step 2 maps "bli" -> "ble" and "logi" -> "log").

#include "glossqe/textproc.hpp"

namespace glossqe {
namespace {

class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view w) : b_(w), k_(static_cast<int>(w.size()) - 1) {}

    std::string run() {
        if (k_ <= 1) return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    std::string b_;
    int k_;
    int j_ = 0;

    bool cons(int i) const {
        switch (b_[i]) {
            case 'a': case 'e': case 'i': case 'o': case 'u': return false;
            case 'y': return i == 0 ? true : !cons(i - 1);
            default: return true;
        }
    }

    // Number of VC sequences in b[0..j].
    int m() const {
        int n = 0;
        int i = 0;
        for (;;) {
            if (i > j_) return n;
            if (!cons(i)) break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j_) return n;
                if (cons(i)) break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j_) return n;
                if (!cons(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i)) return true;
        return false;
    }

    bool double_cons(int j) const {
        if (j < 1) return false;
        if (b_[j] != b_[j - 1]) return false;
        return cons(j);
    }

    // consonant-vowel-consonant ending at i, last consonant not w, x or y
    bool cvc(int i) const {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
        char ch = b_[i];
        return !(ch == 'w' || ch == 'x' || ch == 'y');
    }

    bool ends(std::string_view s) {
        int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1), s.size()) != s) return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void r(std::string_view s) {
        if (m() > 0) set_to(s);
    }

    void step1ab() {
        if (b_[k_] == 's') {
            if (ends("sses")) k_ -= 2;
            else if (ends("ies")) set_to("i");
            else if (b_[k_ - 1] != 's') --k_;
        }
        if (ends("eed")) {
            if (m() > 0) --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_cons(k_)) {
                --k_;
                char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
            } else if (m() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
    }

    // Tries each (suffix, replacement) in order; the first suffix match
    // decides, whether or not the measure condition lets it fire.
    template <std::size_t N>
    void replace_first(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
        for (const auto& [suffix, repl] : rules) {
            if (ends(suffix)) {
                r(repl);
                return;
            }
        }
    }

    void step2() {
        switch (b_[k_ - 1]) {
            case 'a': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"ational", "ate"}, {"tional", "tion"}};
                replace_first(rules);
                break;
            }
            case 'c': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"enci", "ence"}, {"anci", "ance"}};
                replace_first(rules);
                break;
            }
            case 'e': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"izer", "ize"}};
                replace_first(rules);
                break;
            }
            case 'l': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
                replace_first(rules);
                break;
            }
            case 'o': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
                replace_first(rules);
                break;
            }
            case 's': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
                replace_first(rules);
                break;
            }
            case 't': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
                replace_first(rules);
                break;
            }
            case 'g': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"logi", "log"}};
                replace_first(rules);
                break;
            }
            default: break;
        }
    }

    void step3() {
        switch (b_[k_]) {
            case 'e': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
                replace_first(rules);
                break;
            }
            case 'i': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"iciti", "ic"}};
                replace_first(rules);
                break;
            }
            case 'l': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"ical", "ic"}, {"ful", ""}};
                replace_first(rules);
                break;
            }
            case 's': {
                static constexpr std::pair<std::string_view, std::string_view> rules[] = {
                    {"ness", ""}};
                replace_first(rules);
                break;
            }
            default: break;
        }
    }

    void step4() {
        switch (b_[k_ - 1]) {
            case 'a':
                if (ends("al")) break;
                return;
            case 'c':
                if (ends("ance")) break;
                if (ends("ence")) break;
                return;
            case 'e':
                if (ends("er")) break;
                return;
            case 'i':
                if (ends("ic")) break;
                return;
            case 'l':
                if (ends("able")) break;
                if (ends("ible")) break;
                return;
            case 'n':
                if (ends("ant")) break;
                if (ends("ement")) break;
                if (ends("ment")) break;
                if (ends("ent")) break;
                return;
            case 'o':
                if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
                if (ends("ou")) break;
                return;
            case 's':
                if (ends("ism")) break;
                return;
            case 't':
                if (ends("ate")) break;
                if (ends("iti")) break;
                return;
            case 'u':
                if (ends("ous")) break;
                return;
            case 'v':
                if (ends("ive")) break;
                return;
            case 'z':
                if (ends("ize")) break;
                return;
            default:
                return;
        }
        if (m() > 1) k_ = j_;
    }

    void step5() {
        j_ = k_;
        if (b_[k_] == 'e') {
            int a = m();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
        }
        if (b_[k_] == 'l' && double_cons(k_) && m() > 1) --k_;
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    return PorterStemmer(word).run();
}

}  // namespace glossqe
