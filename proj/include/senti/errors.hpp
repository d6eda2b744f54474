// errors.hpp - exception hierarchy shared by every senti module.
//
// data_error and its subclasses describe bad input (exit status 2 at the
// CLI), config_error describes a bad option or hyperparameter (exit 1).

#ifndef SENTI_ERRORS_HPP
#define SENTI_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace senti
{

class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class config_error : public error
{
public:
    using error::error;
};

class data_error : public error
{
public:
    using error::error;
};

class io_error : public data_error
{
public:
    using data_error::data_error;
};

class schema_error : public data_error
{
public:
    using data_error::data_error;
};

/// Positioned error from the ARFF reader. line and column are 1-based.
class parse_error : public data_error
{
public:
    enum class kind
    {
        syntax,
        arity,
        domain,
        encoding
    };

    parse_error(kind k, std::size_t line, std::size_t column, const std::string& detail,
                const std::string& source = {})
        : data_error((source.empty() ? std::string() : source + ": ") + "line " + std::to_string(line) +
                     ", column " + std::to_string(column) + ": " + detail)
        , detail_(detail)
        , kind_(k)
        , line_(line)
        , column_(column)
    {
    }

    kind error_kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    kind kind_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace senti

#endif  // SENTI_ERRORS_HPP
