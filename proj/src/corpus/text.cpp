#include "senti/corpus.hpp"

#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <algorithm>

namespace senti::corpus
{

tokenizer_config::tokenizer_config() : tokenizer_config(std::string_view(" \t\r\n.,;:'\"()?!")) {}

tokenizer_config::tokenizer_config(std::string_view delimiters)
{
    for (const char c : delimiters)
    {
        if (static_cast<unsigned char>(c) >= 0x80)
            throw config_error("tokenizer delimiters must be ASCII");
        if (!set_[static_cast<unsigned char>(c)])
        {
            set_.set(static_cast<unsigned char>(c));
            chars_ += c;
        }
    }
    if (chars_.empty())
        throw config_error("tokenizer delimiter set is empty");
}

stopword_list::stopword_list(const std::vector<std::string>& words)
{
    for (const auto& w : words)
    {
        if (w.empty())
            throw config_error("empty stop-word");
        words_.insert(to_lower(w));
    }
}

stopword_list stopword_list::parse(std::string_view text)
{
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos)
        {
            const auto last = line.find_last_not_of(" \t\r");
            words.emplace_back(line.substr(first, last - first + 1));
        }
        if (nl == std::string_view::npos)
            break;
        pos = nl + 1;
    }
    return stopword_list(words);
}

stopword_list stopword_list::load(const std::filesystem::path& path)
{
    const std::string text = io::read_text(path);
    if (io::find_invalid_utf8(text))
        throw data_error("stop-word file '" + path.string() + "' is not valid UTF-8");
    return parse(text);
}

std::vector<std::string> tokenize(std::string_view text, const tokenizer_config& config)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size())
    {
        while (i < text.size() && config.is_delimiter(text[i]))
            ++i;
        const std::size_t start = i;
        while (i < text.size() && !config.is_delimiter(text[i]))
            ++i;
        if (i > start)
            tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

std::string to_lower(std::string_view text)
{
    std::string out(text);
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        const auto c = static_cast<unsigned char>(out[i]);
        if (c >= 'A' && c <= 'Z')
            out[i] = static_cast<char>(c + 32);
        else if (c == 0xC3 && i + 1 < out.size())
        {
            // U+00C0..U+00DE except U+00D7 (multiplication sign)
            const auto n = static_cast<unsigned char>(out[i + 1]);
            if (n >= 0x80 && n <= 0x9E && n != 0x97)
                out[i + 1] = static_cast<char>(n + 0x20);
            ++i;
        }
    }
    return out;
}

std::vector<std::string> lowercase(std::vector<std::string> tokens)
{
    for (auto& t : tokens)
        t = to_lower(t);
    return tokens;
}

std::vector<std::string> remove_stopwords(std::vector<std::string> tokens, const stopword_list& stops)
{
    if (stops.size() == 0)
        return tokens;
    std::erase_if(tokens, [&](const std::string& t) { return stops.contains(t); });
    return tokens;
}

std::vector<std::string> process(std::string_view text, const tokenizer_config& config, const stopword_list& stops)
{
    return remove_stopwords(lowercase(tokenize(text, config)), stops);
}

}  // namespace senti::corpus
