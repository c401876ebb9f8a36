#pragma once

#include <stdexcept>
#include <string>

#include "echinf/hf_model.hpp"

namespace echinf::cli {

inline constexpr const char* document_format = "echinf-hf";
inline constexpr int document_version = 1;

// Input or semantic error in a document; the message carries the location
// ("line 3, column 14" for syntax, a JSON path such as differential[2].to otherwise).
class DocumentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

HFData parse_document(const std::string& text);
HFData read_document(const std::string& path);
// Canonical form: two-space indentation, fixed key order, integers as decimal
// strings, trailing newline.
std::string write_document(const HFData& hf);

std::string read_file(const std::string& path);
std::string sha256_hex(const std::string& data);

}  // namespace echinf::cli
