#pragma once

#include <iosfwd>
#include <string>

#include "dfainduct/dfa.hpp"
#include "dfainduct/sample.hpp"

namespace dfainduct {

// Abbadingo-style sample text: header "<count> <alphabet_size>", then one
// line per string: "<label> <length> <symbols...>" with label 0 or 1 and
// symbols 0..A-1.
Sample read_abbadingo(std::istream& in, const std::string& source_name = "<input>");
Sample read_abbadingo_file(const std::string& path);
std::string write_abbadingo(const Sample& sample);

// States printed 1-based with start state 1.
std::string dfa_to_dot(const Dfa& dfa);
std::string dfa_to_json(const Dfa& dfa);
Dfa dfa_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace dfainduct
