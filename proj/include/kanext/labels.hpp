#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kanext {

// Injective encoding of label tuples: "(a,b,c)" with '\\', '(', ')' and ','
// escaped inside components.
inline void append_escaped(std::string& out, std::string_view s)
{
    for (char c : s) {
        if (c == '\\' || c == '(' || c == ')' || c == ',')
            out += '\\';
        out += c;
    }
}

inline std::string encode_tuple(const std::vector<std::string>& parts)
{
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ',';
        append_escaped(out, parts[i]);
    }
    out += ')';
    return out;
}

inline std::string encode_pair(std::string_view a, std::string_view b)
{
    std::string out = "(";
    append_escaped(out, a);
    out += ',';
    append_escaped(out, b);
    out += ')';
    return out;
}

}  // namespace kanext
