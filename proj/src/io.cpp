#include "dfainduct/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dfainduct/error.hpp"

namespace dfainduct {

using nlohmann::json;

Sample read_abbadingo(std::istream& in, const std::string& source_name) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };

    if (!next_line()) throw ParseError(source_name, 1, "missing header line");
    long count, alphabet_size;
    {
        std::istringstream header(line);
        if (!(header >> count >> alphabet_size) || count < 0 || alphabet_size < 1)
            throw ParseError(source_name, line_no, "header must be \"<count> <alphabet_size>\"");
    }

    std::vector<std::string> names;
    for (int i = 0; i < alphabet_size; ++i) names.push_back(std::to_string(i));
    Sample sample(names);

    for (long i = 0; i < count; ++i) {
        if (!next_line())
            throw ParseError(source_name, line_no + 1,
                             "expected " + std::to_string(count) + " strings, got " +
                                 std::to_string(i));
        std::istringstream row(line);
        int label, length;
        if (!(row >> label >> length) || (label != 0 && label != 1) || length < 0)
            throw ParseError(source_name, line_no, "expected \"<label> <length> <symbols...>\"");
        Word word(length);
        for (int k = 0; k < length; ++k) {
            long sym;
            if (!(row >> sym))
                throw ParseError(source_name, line_no, "string shorter than its declared length");
            if (sym < 0 || sym >= alphabet_size)
                throw ParseError(source_name, line_no,
                                 "symbol " + std::to_string(sym) + " outside alphabet of size " +
                                     std::to_string(alphabet_size));
            word[k] = static_cast<int>(sym);
        }
        long extra;
        if (row >> extra)
            throw ParseError(source_name, line_no, "string longer than its declared length");
        try {
            sample.add(word, label == 1);
        } catch (const LabelConflictError& e) {
            throw ParseError(source_name, line_no, e.what());
        }
    }
    return sample;
}

Sample read_abbadingo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return read_abbadingo(in, path);
}

std::string write_abbadingo(const Sample& sample) {
    std::ostringstream out;
    out << sample.size() << ' ' << sample.alphabet_size() << '\n';
    auto row = [&](const Word& w, int label) {
        out << label << ' ' << w.size();
        for (int sym : w) out << ' ' << sample.alphabet()[sym];
        out << '\n';
    };
    for (const Word& w : sample.positives()) row(w, 1);
    for (const Word& w : sample.negatives()) row(w, 0);
    return out.str();
}

std::string dfa_to_dot(const Dfa& dfa) {
    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  start [shape=none, label=\"\"];\n";
    for (int s = 0; s < dfa.num_states; ++s)
        out << "  " << s + 1 << " [shape=" << (dfa.accepting[s] ? "doublecircle" : "circle")
            << "];\n";
    out << "  start -> 1;\n";
    for (int s = 0; s < dfa.num_states; ++s)
        for (int l = 0; l < dfa.alphabet_size(); ++l)
            out << "  " << s + 1 << " -> " << dfa.next(s, l) + 1 << " [label=\""
                << dfa.alphabet[l] << "\"];\n";
    out << "}\n";
    return out.str();
}

json dfa_to_json_value(const Dfa& dfa) {
    json transitions = json::array();
    for (int s = 0; s < dfa.num_states; ++s)
        for (int l = 0; l < dfa.alphabet_size(); ++l)
            transitions.push_back(
                {{"from", s + 1}, {"label", dfa.alphabet[l]}, {"to", dfa.next(s, l) + 1}});
    json accepting = json::array();
    for (int s = 0; s < dfa.num_states; ++s)
        if (dfa.accepting[s]) accepting.push_back(s + 1);
    return json{{"size", dfa.num_states},
                {"alphabet", dfa.alphabet},
                {"start", 1},
                {"accepting", accepting},
                {"transitions", transitions}};
}

std::string dfa_to_json(const Dfa& dfa) { return dfa_to_json_value(dfa).dump(2) + "\n"; }

Dfa dfa_from_json_value(const json& doc) {
    Dfa dfa;
    dfa.num_states = doc.at("size").get<int>();
    dfa.alphabet = doc.at("alphabet").get<std::vector<std::string>>();
    if (doc.value("start", 1) != 1) throw Error("start state must be 1");
    dfa.transitions.assign(static_cast<size_t>(dfa.num_states) * dfa.alphabet_size(), -1);
    dfa.accepting.assign(dfa.num_states, 0);
    for (const auto& s : doc.at("accepting")) dfa.accepting.at(s.get<int>() - 1) = 1;
    for (const auto& t : doc.at("transitions")) {
        std::string label = t.at("label").get<std::string>();
        int symbol = -1;
        for (int l = 0; l < dfa.alphabet_size(); ++l)
            if (dfa.alphabet[l] == label) symbol = l;
        if (symbol < 0) throw Error("transition label outside alphabet: " + label);
        dfa.next(t.at("from").get<int>() - 1, symbol) = t.at("to").get<int>() - 1;
    }
    for (int value : dfa.transitions)
        if (value < 0 || value >= dfa.num_states)
            throw Error("transition table is not total over states x alphabet");
    return dfa;
}

Dfa dfa_from_json(const std::string& text) { return dfa_from_json_value(json::parse(text)); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace dfainduct
