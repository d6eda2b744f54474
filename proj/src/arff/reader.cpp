#include "senti/arff.hpp"

#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace senti::arff
{
namespace
{

enum class token_kind
{
    word,
    quoted,
    comma,
    open_brace,
    close_brace
};

struct token
{
    token_kind kind;
    std::string text;
    std::size_t column;  // 1-based
};

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

class line_lexer
{
public:
    line_lexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    std::vector<token> run()
    {
        std::vector<token> out;
        std::size_t i = 0;
        while (i < line_.size())
        {
            const char c = line_[i];
            if (is_space(c))
            {
                ++i;
                continue;
            }
            if (c == '%')
                break;
            if (c == ',')
                out.push_back({token_kind::comma, ",", i + 1}), ++i;
            else if (c == '{')
                out.push_back({token_kind::open_brace, "{", i + 1}), ++i;
            else if (c == '}')
                out.push_back({token_kind::close_brace, "}", i + 1}), ++i;
            else if (c == '\'' || c == '"')
                out.push_back(quoted(i));
            else
            {
                const std::size_t start = i;
                while (i < line_.size() && !is_space(line_[i]) && line_[i] != ',' && line_[i] != '{' &&
                       line_[i] != '}' && line_[i] != '%')
                    ++i;
                out.push_back({token_kind::word, std::string(line_.substr(start, i - start)), start + 1});
            }
        }
        return out;
    }

private:
    token quoted(std::size_t& i)
    {
        const char q = line_[i];
        const std::size_t start = i;
        std::string text;
        ++i;
        while (true)
        {
            if (i >= line_.size())
                throw parse_error(parse_error::kind::syntax, line_no_, start + 1, "unterminated quoted token");
            const char c = line_[i];
            if (c == q)
            {
                if (i + 1 < line_.size() && line_[i + 1] == q)
                {
                    text += q;
                    i += 2;
                    continue;
                }
                ++i;
                break;
            }
            if (c == '\\' && i + 1 < line_.size())
            {
                const char e = line_[i + 1];
                switch (e)
                {
                case 'n': text += '\n'; break;
                case 'r': text += '\r'; break;
                case 't': text += '\t'; break;
                case '\\': text += '\\'; break;
                case '\'': text += '\''; break;
                case '"': text += '"'; break;
                default: text += '\\'; text += e; break;
                }
                i += 2;
                continue;
            }
            text += c;
            ++i;
        }
        // a closing quote must end the token
        if (i < line_.size() && !is_space(line_[i]) && line_[i] != ',' && line_[i] != '}' && line_[i] != '%')
            throw parse_error(parse_error::kind::syntax, line_no_, i + 1, "unexpected character after quoted token");
        return {token_kind::quoted, std::move(text), start + 1};
    }

    std::string_view line_;
    std::size_t line_no_;
};

bool is_value_token(const token& t) { return t.kind == token_kind::word || t.kind == token_kind::quoted; }

class reader
{
public:
    explicit reader(std::string_view source) : source_(source) {}

    dataset run()
    {
        check_encoding();
        bool seen_relation = false;
        bool in_data = false;
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= source_.size())
        {
            const std::size_t nl = source_.find('\n', pos);
            const std::size_t end = nl == std::string_view::npos ? source_.size() : nl;
            std::string_view line = source_.substr(pos, end - pos);
            ++line_no;
            pos = end + 1;

            auto tokens = line_lexer(line, line_no).run();
            if (!tokens.empty())
            {
                if (in_data)
                    data_row(tokens, line_no, line.size());
                else
                {
                    const auto& head = tokens.front();
                    if (head.kind != token_kind::word || head.text.empty() || head.text.front() != '@')
                        throw parse_error(parse_error::kind::syntax, line_no, head.column,
                                          "expected @relation, @attribute or @data");
                    const std::string_view keyword = std::string_view(head.text).substr(1);
                    if (iequals(keyword, "relation"))
                    {
                        if (seen_relation)
                            throw parse_error(parse_error::kind::syntax, line_no, head.column, "duplicate @relation");
                        relation(tokens, line_no);
                        seen_relation = true;
                    }
                    else if (iequals(keyword, "attribute"))
                    {
                        if (!seen_relation)
                            throw parse_error(parse_error::kind::syntax, line_no, head.column,
                                              "@attribute before @relation");
                        attribute_decl(tokens, line_no, line.size());
                    }
                    else if (iequals(keyword, "data"))
                    {
                        if (data_.attributes.empty())
                            throw parse_error(parse_error::kind::syntax, line_no, head.column,
                                              "@data before any @attribute");
                        if (tokens.size() > 1)
                            throw parse_error(parse_error::kind::syntax, line_no, tokens[1].column,
                                              "unexpected token after @data");
                        in_data = true;
                    }
                    else
                    {
                        throw parse_error(parse_error::kind::syntax, line_no, head.column,
                                          "unknown keyword '" + head.text + "'");
                    }
                }
            }
            if (nl == std::string_view::npos)
                break;
        }
        if (!in_data)
            throw parse_error(parse_error::kind::syntax, line_no, 1, "missing @data section");
        if (!data_.attributes.empty() && data_.attributes.back().kind == attribute_kind::nominal)
            data_.class_index = data_.attributes.size() - 1;
        return std::move(data_);
    }

private:
    void check_encoding() const
    {
        const auto bad = io::find_invalid_utf8(source_);
        if (!bad)
            return;
        const std::string_view before = source_.substr(0, *bad);
        const std::size_t line = static_cast<std::size_t>(std::count(before.begin(), before.end(), '\n')) + 1;
        const std::size_t last_nl = before.rfind('\n');
        const std::size_t column = last_nl == std::string_view::npos ? *bad + 1 : *bad - last_nl;
        throw parse_error(parse_error::kind::encoding, line, column, "invalid UTF-8 sequence");
    }

    void relation(const std::vector<token>& t, std::size_t line_no)
    {
        if (t.size() < 2 || !is_value_token(t[1]))
            throw parse_error(parse_error::kind::syntax, line_no, t[0].column, "@relation needs a name");
        if (t.size() > 2)
            throw parse_error(parse_error::kind::syntax, line_no, t[2].column, "unexpected token after relation name");
        data_.relation = t[1].text;
    }

    void attribute_decl(const std::vector<token>& t, std::size_t line_no, std::size_t line_len)
    {
        if (t.size() < 3 || !is_value_token(t[1]))
            throw parse_error(parse_error::kind::syntax, line_no, t[0].column, "@attribute needs a name and a type");
        attribute a;
        a.name = t[1].text;
        if (a.name.empty())
            throw parse_error(parse_error::kind::syntax, line_no, t[1].column, "empty attribute name");
        for (const auto& existing : data_.attributes)
            if (existing.name == a.name)
                throw parse_error(parse_error::kind::syntax, line_no, t[1].column,
                                  "duplicate attribute '" + a.name + "'");

        const token& type = t[2];
        if (type.kind == token_kind::open_brace)
        {
            a.kind = attribute_kind::nominal;
            std::size_t i = 3;
            bool expect_value = true;
            bool closed = false;
            for (; i < t.size(); ++i)
            {
                if (expect_value)
                {
                    if (!is_value_token(t[i]))
                        throw parse_error(parse_error::kind::syntax, line_no, t[i].column,
                                          a.values.empty() ? "empty nominal value list" : "expected a nominal value");
                    if (a.index_of(t[i].text))
                        throw parse_error(parse_error::kind::syntax, line_no, t[i].column,
                                          "duplicate nominal value '" + t[i].text + "'");
                    a.values.push_back(t[i].text);
                    expect_value = false;
                }
                else if (t[i].kind == token_kind::comma)
                    expect_value = true;
                else if (t[i].kind == token_kind::close_brace)
                {
                    closed = true;
                    ++i;
                    break;
                }
                else
                    throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "expected ',' or '}'");
            }
            if (!closed)
                throw parse_error(parse_error::kind::syntax, line_no, line_len + 1, "unterminated nominal value list");
            if (a.values.empty())
                throw parse_error(parse_error::kind::syntax, line_no, type.column, "empty nominal value list");
            if (i < t.size())
                throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "unexpected token after type");
        }
        else if (type.kind == token_kind::word)
        {
            if (iequals(type.text, "numeric") || iequals(type.text, "real") || iequals(type.text, "integer"))
                a.kind = attribute_kind::numeric;
            else if (iequals(type.text, "string"))
                a.kind = attribute_kind::string;
            else if (iequals(type.text, "date") || iequals(type.text, "relational"))
                throw parse_error(parse_error::kind::syntax, line_no, type.column,
                                  "unsupported attribute type '" + type.text + "'");
            else
                throw parse_error(parse_error::kind::syntax, line_no, type.column,
                                  "unknown attribute type '" + type.text + "'");
            if (t.size() > 3)
                throw parse_error(parse_error::kind::syntax, line_no, t[3].column, "unexpected token after type");
        }
        else
        {
            throw parse_error(parse_error::kind::syntax, line_no, type.column, "expected an attribute type");
        }
        data_.attributes.push_back(std::move(a));
    }

    value convert(const token& t, std::size_t attr, std::size_t line_no) const
    {
        if (t.kind == token_kind::word && t.text == "?")
            return std::monostate{};
        const auto& a = data_.attributes[attr];
        switch (a.kind)
        {
        case attribute_kind::numeric: {
            const auto v = io::parse_double(t.text);
            if (!v)
                throw parse_error(parse_error::kind::domain, line_no, t.column,
                                  "'" + t.text + "' is not a number (attribute '" + a.name + "')");
            if (!std::isfinite(*v))
                throw parse_error(parse_error::kind::domain, line_no, t.column,
                                  "non-finite number for attribute '" + a.name + "'");
            return *v;
        }
        case attribute_kind::nominal: {
            const auto idx = a.index_of(t.text);
            if (!idx)
                throw parse_error(parse_error::kind::domain, line_no, t.column,
                                  "'" + t.text + "' is not a declared value of '" + a.name + "'");
            return nominal{*idx};
        }
        case attribute_kind::string:
            return t.text;
        }
        return std::monostate{};
    }

    void data_row(const std::vector<token>& t, std::size_t line_no, std::size_t line_len)
    {
        if (t.front().kind == token_kind::open_brace)
            sparse_row(t, line_no, line_len);
        else
            dense_row(t, line_no, line_len);
    }

    void dense_row(const std::vector<token>& t, std::size_t line_no, std::size_t line_len)
    {
        const std::size_t width = data_.attributes.size();
        row r;
        r.reserve(width);
        bool expect_value = true;
        for (const auto& tok : t)
        {
            if (expect_value)
            {
                if (!is_value_token(tok))
                    throw parse_error(parse_error::kind::syntax, line_no, tok.column, "expected a value");
                if (r.size() == width)
                    throw parse_error(parse_error::kind::arity, line_no, tok.column,
                                      "row has more than " + std::to_string(width) + " values");
                r.push_back(convert(tok, r.size(), line_no));
                expect_value = false;
            }
            else if (tok.kind == token_kind::comma)
                expect_value = true;
            else
                throw parse_error(parse_error::kind::syntax, line_no, tok.column, "expected ','");
        }
        if (expect_value)
            throw parse_error(parse_error::kind::syntax, line_no, line_len + 1, "row ends with ','");
        if (r.size() != width)
            throw parse_error(parse_error::kind::arity, line_no, 1,
                              "row has " + std::to_string(r.size()) + " values, expected " + std::to_string(width));
        data_.instances.push_back(std::move(r));
    }

    void sparse_row(const std::vector<token>& t, std::size_t line_no, std::size_t line_len)
    {
        const std::size_t width = data_.attributes.size();
        std::vector<bool> present(width, false);
        row r(width);
        std::size_t i = 1;
        std::optional<std::size_t> last;
        bool closed = false;
        while (i < t.size())
        {
            if (t[i].kind == token_kind::close_brace)
            {
                if (last && t[i - 1].kind == token_kind::comma)
                    throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "'}' after ','");
                closed = true;
                ++i;
                break;
            }
            if (t[i].kind != token_kind::word)
                throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "expected an attribute index");
            std::size_t index = 0;
            const auto& digits = t[i].text;
            if (digits.empty() || digits.size() > 9 ||
                !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
                throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "bad attribute index '" + digits + "'");
            index = std::stoul(digits);
            if (index >= width)
                throw parse_error(parse_error::kind::arity, line_no, t[i].column,
                                  "attribute index " + digits + " out of range");
            if (last && index <= *last)
                throw parse_error(parse_error::kind::syntax, line_no, t[i].column,
                                  "sparse indices must be strictly increasing");
            if (i + 1 >= t.size() || !is_value_token(t[i + 1]))
                throw parse_error(parse_error::kind::syntax, line_no,
                                  i + 1 < t.size() ? t[i + 1].column : line_len + 1, "expected a value after index");
            r[index] = convert(t[i + 1], index, line_no);
            present[index] = true;
            last = index;
            i += 2;
            if (i < t.size() && t[i].kind == token_kind::comma)
                ++i;
            else if (i < t.size() && t[i].kind != token_kind::close_brace)
                throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "expected ',' or '}'");
        }
        if (!closed)
            throw parse_error(parse_error::kind::syntax, line_no, line_len + 1, "unterminated sparse row");
        if (i < t.size())
            throw parse_error(parse_error::kind::syntax, line_no, t[i].column, "unexpected token after sparse row");

        for (std::size_t a = 0; a < width; ++a)
        {
            if (present[a])
                continue;
            switch (data_.attributes[a].kind)
            {
            case attribute_kind::numeric: r[a] = 0.0; break;
            case attribute_kind::nominal: r[a] = nominal{0}; break;
            case attribute_kind::string:
                throw parse_error(parse_error::kind::arity, line_no, t.front().column,
                                  "sparse row omits string attribute '" + data_.attributes[a].name + "'");
            }
        }
        data_.instances.push_back(std::move(r));
    }

    std::string_view source_;
    dataset data_;
};

}  // namespace

dataset parse(std::string_view source)
{
    return reader(source).run();
}

dataset read_file(const std::filesystem::path& path)
{
    const std::string text = io::read_text(path);
    try
    {
        return parse(text);
    }
    catch (const parse_error& e)
    {
        throw parse_error(e.error_kind(), e.line(), e.column(), e.detail(), path.string());
    }
}

}  // namespace senti::arff
