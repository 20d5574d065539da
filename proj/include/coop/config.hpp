#ifndef COOP_CONFIG_HPP
#define COOP_CONFIG_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "coop/model.hpp"

namespace coop {

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

inline double parse_double(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    require(res.ec == std::errc{} && res.ptr == t.data() + t.size() && !t.empty(),
            what + ": expected a number, got '" + t + "'");
    return v;
}

inline long long parse_int(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    long long v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    require(res.ec == std::errc{} && res.ptr == t.data() + t.size() && !t.empty(),
            what + ": expected an integer, got '" + t + "'");
    return v;
}

inline bool parse_bool(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ValidationError(what + ": expected true or false, got '" + t + "'");
}

/// Plain key = value file. One key per line, '#' starts a comment, keys may repeat.
class KeyValueFile {
public:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    static KeyValueFile parse(std::istream& is, const std::string& source = "<input>")
    {
        KeyValueFile f;
        f.source_ = source;
        std::string raw;
        int line = 0;
        while (std::getline(is, raw)) {
            ++line;
            const auto hash = raw.find('#');
            const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (body.empty()) continue;
            const auto eq = body.find('=');
            require(eq != std::string::npos, source + ":" + std::to_string(line) + ": expected key = value");
            const std::string key = trim(body.substr(0, eq));
            require(!key.empty(), source + ":" + std::to_string(line) + ": empty key");
            f.entries_.push_back({key, trim(body.substr(eq + 1)), line});
        }
        return f;
    }

    static KeyValueFile load(const std::string& path)
    {
        std::ifstream in(path);
        require(static_cast<bool>(in), "cannot open " + path);
        return parse(in, path);
    }

    bool has(const std::string& key) const
    {
        for (const auto& e : entries_)
            if (e.key == key) return true;
        return false;
    }

    /// Last value of key; marks it consumed.
    const std::string* find(const std::string& key) const
    {
        const Entry* hit = nullptr;
        for (const auto& e : entries_)
            if (e.key == key) hit = &e;
        if (!hit) return nullptr;
        used_.insert(key);
        return &hit->value;
    }

    std::vector<std::string> all(const std::string& key) const
    {
        std::vector<std::string> out;
        for (const auto& e : entries_)
            if (e.key == key) out.push_back(e.value);
        if (!out.empty()) used_.insert(key);
        return out;
    }

    std::vector<std::string> keys_with_prefix(const std::string& prefix) const
    {
        std::vector<std::string> out;
        for (const auto& e : entries_)
            if (e.key.rfind(prefix, 0) == 0) out.push_back(e.key);
        return out;
    }

    double get_double(const std::string& key, double fallback) const
    {
        const auto* v = find(key);
        return v ? parse_double(*v, where(key)) : fallback;
    }
    int get_int(const std::string& key, int fallback) const
    {
        const auto* v = find(key);
        return v ? static_cast<int>(parse_int(*v, where(key))) : fallback;
    }
    bool get_bool(const std::string& key, bool fallback) const
    {
        const auto* v = find(key);
        return v ? parse_bool(*v, where(key)) : fallback;
    }
    std::string get_string(const std::string& key, const std::string& fallback) const
    {
        const auto* v = find(key);
        return v ? *v : fallback;
    }
    std::vector<double> get_list(const std::string& key) const
    {
        std::vector<double> out;
        if (const auto* v = find(key))
            for (const auto& part : split(*v, ',')) out.push_back(parse_double(part, where(key)));
        return out;
    }

    /// Keys never read; non-empty means a typo or an unsupported setting.
    std::vector<std::string> unused() const
    {
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (const auto& e : entries_)
            if (!used_.count(e.key) && seen.insert(e.key).second) out.push_back(e.key);
        return out;
    }

    void require_all_used() const
    {
        const auto u = unused();
        if (u.empty()) return;
        std::string msg = source_ + ": unknown key(s):";
        for (const auto& k : u) msg += " " + k;
        throw ValidationError(msg);
    }

    const std::vector<Entry>& entries() const { return entries_; }
    const std::string& source() const { return source_; }

private:
    std::string where(const std::string& key) const
    {
        int line = 0;
        for (const auto& e : entries_)
            if (e.key == key) line = e.line;
        return source_ + ":" + std::to_string(line) + ": " + key;
    }

    std::string source_;
    std::vector<Entry> entries_;
    mutable std::set<std::string> used_;
};

}  // namespace coop

#endif  // COOP_CONFIG_HPP
