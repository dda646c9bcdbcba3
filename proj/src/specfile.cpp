#include "specfile.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cyclescope {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Removes a # comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_quote = !in_quote;
        else if (line[i] == '#' && !in_quote) return line.substr(0, i);
    }
    return line;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw SpecFileError("spec line " + std::to_string(line_no) + ": " + what);
}

std::string parse_quoted(const std::string& item, int line_no) {
    if (item.size() < 2 || item.front() != '"' || item.back() != '"')
        fail(line_no, "expected a quoted string, got '" + item + "'");
    return item.substr(1, item.size() - 2);
}

double parse_number(const std::string& item, int line_no) {
    const char* begin = item.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        fail(line_no, "expected a number, got '" + item + "'");
    return v;
}

std::vector<std::string> parse_string_array(const std::string& raw, int line_no) {
    std::string body = trim(raw);
    if (body.empty() || body.front() != '[' || body.back() != ']')
        fail(line_no, "expected an array [...]");
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> items;
    std::string cur;
    bool in_quote = false;
    for (char ch : body) {
        if (ch == '"') in_quote = !in_quote;
        if (ch == ',' && !in_quote) {
            items.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) items.push_back(cur);
    std::vector<std::string> out;
    for (const auto& it : items) out.push_back(parse_quoted(trim(it), line_no));
    return out;
}

long require_integer(double v, int line_no) {
    if (!(std::floor(v) == v) || std::abs(v) > 1e9) fail(line_no, "expected an integer");
    return static_cast<long>(v);
}

} // namespace

SpecDocument parse_spec_toml(const std::string& text) {
    SpecDocument doc;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[' && s.back() == ']' && s.find('=') == std::string::npos) {
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail(line_no, "empty section name");
            continue;
        }
        std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        // Arrays may continue over following lines until the bracket closes.
        if (!value.empty() && value.front() == '['
            && value.find(']') == std::string::npos) {
            std::string more;
            while (std::getline(in, more)) {
                ++line_no;
                value += " " + trim(strip_comment(more));
                if (value.find(']') != std::string::npos) break;
            }
        }
        if (section.empty() && key == "n") {
            doc.n = require_integer(parse_number(value, line_no), line_no);
        } else if (section.empty() && key == "coefficients") {
            doc.coefficients = parse_string_array(value, line_no);
        } else if (section == "theorem3") {
            if (!doc.theorem3) doc.theorem3.emplace();
            std::string v = parse_quoted(value, line_no);
            if (key == "p") doc.theorem3->p = v;
            else if (key == "q1") doc.theorem3->q1 = v;
            else if (key == "q2") doc.theorem3->q2 = v;
            else if (key == "r") doc.theorem3->r = v;
        } else if (section == "hopf" && key == "a") {
            doc.hopf_a = parse_number(value, line_no);
        }
        // Unknown keys and sections are ignored on purpose.
    }
    return doc;
}

SpecDocument parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& pe) {
        throw SpecFileError(std::string("JSON: ") + pe.what());
    }
    SpecDocument doc;
    try {
        if (j.contains("n")) doc.n = j.at("n").get<long>();
        if (j.contains("coefficients"))
            doc.coefficients = j.at("coefficients").get<std::vector<std::string>>();
        if (j.contains("theorem3")) {
            const json& t = j.at("theorem3");
            doc.theorem3 = Theorem3Data{t.at("p").get<std::string>(),
                                        t.at("q1").get<std::string>(),
                                        t.at("q2").get<std::string>(),
                                        t.at("r").get<std::string>()};
        }
        if (j.contains("hopf")) doc.hopf_a = j.at("hopf").at("a").get<double>();
    } catch (const json::exception& je) {
        throw SpecFileError(std::string("JSON: ") + je.what());
    }
    return doc;
}

SpecDocument load_spec_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecFileError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    bool is_json;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        is_json = true;
    } else if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml") {
        is_json = false;
    } else {
        std::string t = trim(text);
        is_json = !t.empty() && t.front() == '{';
    }
    return is_json ? parse_spec_json(text) : parse_spec_toml(text);
}

EquationSpec build_equation(const SpecDocument& doc) {
    if (doc.coefficients.empty())
        throw SpecFileError("spec declares no coefficients");
    if (doc.n && *doc.n != static_cast<long>(doc.coefficients.size()) - 1)
        throw SpecFileError("n = " + std::to_string(*doc.n) + " disagrees with "
                            + std::to_string(doc.coefficients.size()) + " coefficients");
    return EquationSpec::parse_coefficients(doc.coefficients);
}

std::string substitute_parameter(const std::string& text, char name, double value) {
    auto is_ident = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    char lit[40];
    std::snprintf(lit, sizeof(lit), "(%.17g)", value);
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        bool standalone = text[i] == name && (i == 0 || !is_ident(text[i - 1]))
            && (i + 1 == text.size() || !is_ident(text[i + 1]));
        if (standalone) out += lit;
        else out += text[i];
    }
    return out;
}

} // namespace cyclescope
