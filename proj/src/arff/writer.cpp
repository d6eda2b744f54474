#include "senti/arff.hpp"

#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <cmath>

namespace senti::arff
{
namespace
{

bool needs_quotes(std::string_view token)
{
    if (token.empty() || token == "?")
        return true;
    for (const char c : token)
    {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x20 || u == 0x7f)
            return true;
        switch (c)
        {
        case ' ': case ',': case '{': case '}': case '%': case '\'': case '"': case '\\':
            return true;
        default:
            break;
        }
    }
    return false;
}

void append_value(std::string& out, const attribute& a, const value& v)
{
    if (is_missing(v))
    {
        out += '?';
        return;
    }
    switch (a.kind)
    {
    case attribute_kind::numeric:
        out += io::format_double(std::get<double>(v));
        break;
    case attribute_kind::nominal:
        out += quote_token(a.values.at(std::get<nominal>(v).index));
        break;
    case attribute_kind::string:
        out += quote_token(std::get<std::string>(v));
        break;
    }
}

// true when the sparse reader would reconstruct this cell on its own
bool is_default(const attribute& a, const value& v)
{
    if (a.kind == attribute_kind::numeric)
    {
        const auto* d = std::get_if<double>(&v);
        return d && *d == 0.0 && !std::signbit(*d);
    }
    if (a.kind == attribute_kind::nominal)
    {
        const auto* n = std::get_if<nominal>(&v);
        return n && n->index == 0;
    }
    return false;
}

}  // namespace

std::string quote_token(std::string_view token)
{
    if (!needs_quotes(token))
        return std::string(token);
    std::string out;
    out.reserve(token.size() + 2);
    out += '\'';
    for (const char c : token)
    {
        switch (c)
        {
        case '\'': out += "''"; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c; break;
        }
    }
    out += '\'';
    return out;
}

std::string write(const dataset& data, const write_options& options)
{
    data.validate();
    std::string out;
    out += "@relation ";
    out += quote_token(data.relation);
    out += "\n\n";
    for (const auto& a : data.attributes)
    {
        out += "@attribute ";
        out += quote_token(a.name);
        out += ' ';
        switch (a.kind)
        {
        case attribute_kind::numeric:
            out += "numeric";
            break;
        case attribute_kind::string:
            out += "string";
            break;
        case attribute_kind::nominal:
            out += '{';
            for (std::size_t i = 0; i < a.values.size(); ++i)
            {
                if (i)
                    out += ',';
                out += quote_token(a.values[i]);
            }
            out += '}';
            break;
        }
        out += '\n';
    }
    out += "\n@data\n";

    for (const auto& r : data.instances)
    {
        if (options.sparse)
        {
            out += '{';
            bool first = true;
            for (std::size_t i = 0; i < r.size(); ++i)
            {
                if (is_default(data.attributes[i], r[i]))
                    continue;
                if (!first)
                    out += ',';
                first = false;
                out += std::to_string(i);
                out += ' ';
                append_value(out, data.attributes[i], r[i]);
            }
            out += '}';
        }
        else
        {
            for (std::size_t i = 0; i < r.size(); ++i)
            {
                if (i)
                    out += ',';
                append_value(out, data.attributes[i], r[i]);
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace senti::arff
