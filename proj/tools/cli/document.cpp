#include "document.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace echinf::cli {

using nlohmann::ordered_json;

namespace {

std::string line_col(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& path)
{
    if (!obj.is_object())
        throw DocumentError(path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw DocumentError(path + ": missing field '" + key + "'");
    return *it;
}

std::string text_field(const ordered_json& obj, const char* key, const std::string& path)
{
    const auto& v = field(obj, key, path);
    if (!v.is_string())
        throw DocumentError(path + "." + key + ": expected a string");
    return v.get<std::string>();
}

Integer integer_field(const ordered_json& obj, const char* key, const std::string& path)
{
    const auto& v = field(obj, key, path);
    if (!v.is_string())
        throw DocumentError(path + "." + key + ": integers are written as decimal strings");
    try {
        return parse_integer(v.get<std::string>());
    } catch (const std::exception&) {
        throw DocumentError(path + "." + key + ": '" + v.get<std::string>() + "' is not an integer");
    }
}

std::int64_t small_field(const ordered_json& obj, const char* key, const std::string& path)
{
    Integer v = integer_field(obj, key, path);
    try {
        return to_int64(v);
    } catch (const std::exception&) {
        throw DocumentError(path + "." + key + ": value out of range");
    }
}

const ordered_json& array_field(const ordered_json& obj, const char* key, const std::string& path)
{
    const auto& v = field(obj, key, path);
    if (!v.is_array())
        throw DocumentError(path + "." + key + ": expected an array");
    return v;
}

std::vector<HFEntry> parse_entries(const ordered_json& arr, const std::string& path,
                                   const std::map<std::string, std::uint32_t>& index)
{
    std::vector<HFEntry> out;
    for (std::size_t n = 0; n < arr.size(); ++n) {
        std::string at = path + "[" + std::to_string(n) + "]";
        HFEntry e;
        for (const char* end : {"from", "to"}) {
            std::string name = text_field(arr[n], end, at);
            auto it = index.find(name);
            if (it == index.end())
                throw DocumentError(at + "." + end + ": unknown generator '" + name + "'");
            (std::string(end) == "from" ? e.from : e.to) = it->second;
        }
        e.t_power = small_field(arr[n], "t_power", at);
        e.coef = integer_field(arr[n], "coef", at);
        out.push_back(std::move(e));
    }
    return out;
}

ordered_json entries_json(const HFData& hf, const std::vector<HFEntry>& entries)
{
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        ordered_json j;
        j["from"] = hf.names.at(e.from);
        j["to"] = hf.names.at(e.to);
        j["t_power"] = std::to_string(e.t_power);
        j["coef"] = to_string(e.coef);
        arr.push_back(std::move(j));
    }
    return arr;
}

}  // namespace

HFData parse_document(const std::string& text)
{
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string what = e.what();
        auto colon = what.rfind(": ");
        throw DocumentError("syntax error at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                            (colon == std::string::npos ? what : what.substr(colon + 2)));
    }
    if (!doc.is_object())
        throw DocumentError("document: expected an object");
    if (text_field(doc, "format", "document") != document_format)
        throw DocumentError("format: expected '" + std::string(document_format) + "'");
    const auto& ver = field(doc, "version", "document");
    if (!ver.is_number_integer() || ver.get<int>() != document_version)
        throw DocumentError("version: only version " + std::to_string(document_version) + " is supported");

    HFData hf;
    hf.modulus = small_field(doc, "p", "document");
    const auto& gens = array_field(doc, "generators", "document");
    std::map<std::string, std::uint32_t> index;
    for (std::size_t n = 0; n < gens.size(); ++n) {
        std::string at = "generators[" + std::to_string(n) + "]";
        std::string name = text_field(gens[n], "name", at);
        if (name.empty())
            throw DocumentError(at + ".name: empty name");
        if (!index.emplace(name, static_cast<std::uint32_t>(n)).second)
            throw DocumentError(at + ".name: duplicate generator '" + name + "'");
        hf.names.push_back(name);
        hf.gradings.push_back(small_field(gens[n], "grading", at));
    }
    hf.differential = parse_entries(array_field(doc, "differential", "document"), "differential", index);
    if (doc.contains("h1_actions")) {
        const auto& acts = array_field(doc, "h1_actions", "document");
        for (std::size_t n = 0; n < acts.size(); ++n) {
            std::string at = "h1_actions[" + std::to_string(n) + "]";
            H1Action a;
            a.name = text_field(acts[n], "name", at);
            a.entries = parse_entries(array_field(acts[n], "entries", at), at + ".entries", index);
            hf.h1_actions.push_back(std::move(a));
        }
    }
    if (doc.contains("metadata")) {
        const auto& meta = doc["metadata"];
        if (meta.contains("description"))
            hf.description = text_field(meta, "description", "metadata");
        if (meta.contains("provenance"))
            hf.provenance = text_field(meta, "provenance", "metadata");
    }
    return hf;
}

std::string write_document(const HFData& hf)
{
    ordered_json doc;
    doc["format"] = document_format;
    doc["version"] = document_version;
    doc["p"] = std::to_string(hf.modulus);
    ordered_json gens = ordered_json::array();
    for (std::size_t n = 0; n < hf.size(); ++n)
        gens.push_back(ordered_json{{"name", hf.names[n]}, {"grading", std::to_string(hf.gradings[n])}});
    doc["generators"] = std::move(gens);
    doc["differential"] = entries_json(hf, hf.differential);
    if (!hf.h1_actions.empty()) {
        ordered_json acts = ordered_json::array();
        for (const auto& a : hf.h1_actions)
            acts.push_back(ordered_json{{"name", a.name}, {"entries", entries_json(hf, a.entries)}});
        doc["h1_actions"] = std::move(acts);
    }
    if (!hf.description.empty() || !hf.provenance.empty()) {
        ordered_json meta = ordered_json::object();
        if (!hf.description.empty())
            meta["description"] = hf.description;
        if (!hf.provenance.empty())
            meta["provenance"] = hf.provenance;
        doc["metadata"] = std::move(meta);
    }
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DocumentError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

HFData read_document(const std::string& path)
{
    return parse_document(read_file(path));
}

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

}  // namespace echinf::cli
