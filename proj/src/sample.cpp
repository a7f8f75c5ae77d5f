#include "dfainduct/sample.hpp"

#include <algorithm>

#include "dfainduct/error.hpp"

namespace dfainduct {

Sample::Sample(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
    for (size_t i = 0; i < alphabet_.size(); ++i)
        for (size_t j = i + 1; j < alphabet_.size(); ++j)
            if (alphabet_[i] == alphabet_[j])
                throw InputError("duplicate alphabet symbol \"" + alphabet_[i] + "\"");
}

Sample Sample::from_chars(const std::vector<std::string>& positives,
                          const std::vector<std::string>& negatives) {
    std::vector<std::string> alphabet;
    auto scan = [&](const std::vector<std::string>& words) {
        for (const auto& w : words)
            for (char c : w) {
                std::string name(1, c);
                if (std::find(alphabet.begin(), alphabet.end(), name) == alphabet.end())
                    alphabet.push_back(name);
            }
    };
    scan(positives);
    scan(negatives);
    Sample s(std::move(alphabet));
    for (const auto& w : positives) s.add_chars(w, true);
    for (const auto& w : negatives) s.add_chars(w, false);
    return s;
}

Sample Sample::from_chars(const std::string& alphabet,
                          const std::vector<std::string>& positives,
                          const std::vector<std::string>& negatives) {
    std::vector<std::string> names;
    for (char c : alphabet) names.emplace_back(1, c);
    Sample s(std::move(names));
    for (const auto& w : positives) s.add_chars(w, true);
    for (const auto& w : negatives) s.add_chars(w, false);
    return s;
}

void Sample::add(const Word& word, bool positive) {
    for (int sym : word)
        if (sym < 0 || sym >= alphabet_size())
            throw InputError("symbol index " + std::to_string(sym) + " outside alphabet");
    if (contains(word, positive)) return;  // duplicates collapse
    if (contains(word, !positive)) throw LabelConflictError(format_word(word));
    (positive ? positives_ : negatives_).push_back(word);
}

void Sample::add_chars(const std::string& word, bool positive) {
    Word w;
    w.reserve(word.size());
    for (char c : word) {
        int idx = symbol_index(std::string(1, c));
        if (idx < 0) throw InputError("symbol \"" + std::string(1, c) + "\" outside alphabet");
        w.push_back(idx);
    }
    add(w, positive);
}

bool Sample::contains(const Word& word, bool positive) const {
    const auto& bucket = positive ? positives_ : negatives_;
    return std::find(bucket.begin(), bucket.end(), word) != bucket.end();
}

int Sample::symbol_index(const std::string& name) const {
    for (size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name) return static_cast<int>(i);
    return -1;
}

std::string Sample::format_word(const Word& word) const {
    if (word.empty()) return "<empty>";
    std::string out;
    bool multichar = false;
    for (const auto& name : alphabet_)
        if (name.size() != 1) multichar = true;
    for (size_t i = 0; i < word.size(); ++i) {
        if (multichar && i > 0) out += ' ';
        out += alphabet_[word[i]];
    }
    return out;
}

}  // namespace dfainduct
