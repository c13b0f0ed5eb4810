// Copyright (c) the piezoq developers. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef PIEZOQ_KEYVAL_HPP
#define PIEZOQ_KEYVAL_HPP

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "piezoq/errors.hpp"

namespace piezoq {

// Plain-text key-value files used for materials, loss models and run configs.
//
// Grammar:
//   # comment                     (also allowed after values)
//   [section]                     (optional; keys before any section live in "")
//   key = v1 v2 v3
//        v4 v5                    (continuation: lines without '=' extend the last key)
//
// Keys are case-sensitive. Values are kept verbatim (whitespace-joined).
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_text(ss.str(), path);
    }

    static KeyValueFile parse_text(const std::string& text, const std::string& origin = "<text>") {
        KeyValueFile kv;
        kv.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        std::string section;
        std::string last_key;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw ValidationError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                last_key.clear();
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (last_key.empty())
                    throw ValidationError(origin + ":" + std::to_string(lineno) +
                                          ": continuation line with no preceding key");
                kv.entries_[section + "/" + last_key] += " " + line;
                continue;
            }
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty())
                throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
            last_key = key;
            kv.entries_[section + "/" + key] = val;
        }
        return kv;
    }

    bool has(const std::string& key, const std::string& section = "") const {
        return entries_.count(section + "/" + key) > 0;
    }

    std::optional<std::string> get(const std::string& key, const std::string& section = "") const {
        auto it = entries_.find(section + "/" + key);
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }

    std::string require(const std::string& key, const std::string& section = "") const {
        auto v = get(key, section);
        if (!v)
            throw ValidationError(origin_ + ": missing required key '" + key + "'" +
                                  (section.empty() ? "" : " in section [" + section + "]"));
        return *v;
    }

    double get_double(const std::string& key, const std::string& section = "") const {
        return to_double(require(key, section), key);
    }

    std::optional<double> get_double_opt(const std::string& key, const std::string& section = "") const {
        auto v = get(key, section);
        if (!v || trim(*v).empty()) return std::nullopt;
        return to_double(*v, key);
    }

    std::vector<double> get_doubles(const std::string& key, const std::string& section = "") const {
        std::istringstream ss(require(key, section));
        std::vector<double> out;
        std::string tok;
        while (ss >> tok) out.push_back(to_double(tok, key));
        return out;
    }

    std::vector<std::string> section_keys(const std::string& section) const {
        std::vector<std::string> out;
        const std::string prefix = section + "/";
        for (const auto& [k, v] : entries_)
            if (k.rfind(prefix, 0) == 0) out.push_back(k.substr(prefix.size()));
        return out;
    }

    const std::string& origin() const { return origin_; }

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

private:
    double to_double(const std::string& s, const std::string& key) const {
        std::string t = trim(s);
        try {
            size_t pos = 0;
            double v = std::stod(t, &pos);
            while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
            if (pos != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ValidationError(origin_ + ": key '" + key + "': not a number: '" + t + "'");
        }
    }

    std::map<std::string, std::string> entries_;
    std::string origin_;
};

} // namespace piezoq

#endif
