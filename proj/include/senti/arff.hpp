// arff.hpp - reader and writer for WEKA's Attribute-Relation File Format,
// plus the text-directory loader that turns `root/<class>/<file>` trees
// into a two-attribute (text, class) dataset.
//
// Supported subset: numeric (numeric/real/integer), nominal and string
// attributes; dense and sparse data rows; `?` missing markers; `%` comments.
// Date and relational attributes and instance weights are rejected.
//
// Sparse rows: an omitted numeric entry is 0 and an omitted nominal entry is
// the attribute's FIRST declared value. Omitting a string entry is an error.
//
// Quoted tokens use single or double quotes. Inside quotes the quote
// character is escaped by doubling it; \n, \r, \t and \\ are escapes for
// control characters and the backslash.
//
// Input must be valid UTF-8.

#ifndef SENTI_ARFF_HPP
#define SENTI_ARFF_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace senti::arff
{

enum class attribute_kind
{
    numeric,
    nominal,
    string
};

struct attribute
{
    std::string name;
    attribute_kind kind = attribute_kind::numeric;
    std::vector<std::string> values;  // nominal only, declaration order

    static attribute numeric(std::string name);
    static attribute string(std::string name);
    static attribute nominal(std::string name, std::vector<std::string> values);

    /// Index of `value` in the nominal list, or nullopt.
    std::optional<std::uint32_t> index_of(std::string_view value) const;

    bool operator==(const attribute&) const = default;
};

/// Index into a nominal attribute's declared values.
struct nominal
{
    std::uint32_t index = 0;
    bool operator==(const nominal&) const = default;
};

/// One cell: missing, numeric, nominal or string.
using value = std::variant<std::monostate, double, nominal, std::string>;

inline bool is_missing(const value& v) { return std::holds_alternative<std::monostate>(v); }

using row = std::vector<value>;

struct dataset
{
    std::string relation;
    std::vector<attribute> attributes;
    std::vector<row> instances;
    /// Class attribute. The reader sets it to the last attribute when that
    /// attribute is nominal, matching WEKA's default.
    std::optional<std::size_t> class_index;

    bool operator==(const dataset&) const = default;

    /// Throws schema_error on any broken invariant.
    void validate() const;

    bool has_missing() const;

    const attribute& class_attribute() const;
    std::uint32_t class_of(std::size_t instance) const;
};

/// Parse ARFF text. Throws parse_error with a 1-based position.
dataset parse(std::string_view source);
dataset read_file(const std::filesystem::path& path);

struct write_options
{
    /// Emit `{index value, ...}` rows, omitting numeric zeros and nominal
    /// entries equal to the first declared value.
    bool sparse = false;
};

/// Canonical ARFF text: lowercase keywords, one instance per line, tokens
/// quoted only when the reader would otherwise split or reinterpret them.
std::string write(const dataset& data, const write_options& options = {});

/// Quote a name or value token if needed.
std::string quote_token(std::string_view token);

/// Load `root/<class>/<file>` into a (text: string, class: nominal) dataset.
/// Class values are the subdirectory names in sorted order, instances are
/// ordered by class then by file name, and file contents are kept verbatim.
dataset load_text_directory(const std::filesystem::path& root);

}  // namespace senti::arff

#endif  // SENTI_ARFF_HPP
