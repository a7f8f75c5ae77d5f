#pragma once

#include <string>
#include <vector>

namespace dfainduct {

// A string over the sample's alphabet, as symbol indices.
using Word = std::vector<int>;

/// A labeled training set: an ordered alphabet plus positive and negative
/// example strings. The alphabet order defines the "alphabetical" order used
/// by the symmetry-breaking predicates. Strings are kept in insertion order
/// and deduplicated; a string occurring with both labels is rejected.
class Sample {
public:
    Sample() = default;
    explicit Sample(std::vector<std::string> alphabet);

    // Builds the alphabet from first appearance over positives, then negatives.
    // Each character of a string is one symbol.
    static Sample from_chars(const std::vector<std::string>& positives,
                             const std::vector<std::string>& negatives);

    // Same, but with an explicitly declared symbol order.
    static Sample from_chars(const std::string& alphabet,
                             const std::vector<std::string>& positives,
                             const std::vector<std::string>& negatives);

    void add(const Word& word, bool positive);
    void add_chars(const std::string& word, bool positive);

    int alphabet_size() const { return static_cast<int>(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::vector<Word>& positives() const { return positives_; }
    const std::vector<Word>& negatives() const { return negatives_; }
    int size() const { return static_cast<int>(positives_.size() + negatives_.size()); }
    bool contains(const Word& word, bool positive) const;

    int symbol_index(const std::string& name) const;  // -1 if absent
    std::string format_word(const Word& word) const;

private:
    std::vector<std::string> alphabet_;
    std::vector<Word> positives_;
    std::vector<Word> negatives_;
};

}  // namespace dfainduct
