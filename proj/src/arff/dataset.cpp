#include "senti/arff.hpp"

#include "senti/errors.hpp"

#include <cmath>
#include <set>

namespace senti::arff
{

attribute attribute::numeric(std::string name)
{
    return attribute{std::move(name), attribute_kind::numeric, {}};
}

attribute attribute::string(std::string name)
{
    return attribute{std::move(name), attribute_kind::string, {}};
}

attribute attribute::nominal(std::string name, std::vector<std::string> values)
{
    return attribute{std::move(name), attribute_kind::nominal, std::move(values)};
}

std::optional<std::uint32_t> attribute::index_of(std::string_view value) const
{
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == value)
            return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

void dataset::validate() const
{
    std::set<std::string_view> names;
    for (const auto& a : attributes)
    {
        if (a.name.empty())
            throw schema_error("attribute with an empty name");
        if (!names.insert(a.name).second)
            throw schema_error("duplicate attribute name '" + a.name + "'");
        if (a.kind == attribute_kind::nominal)
        {
            if (a.values.empty())
                throw schema_error("nominal attribute '" + a.name + "' declares no values");
            std::set<std::string_view> seen;
            for (const auto& v : a.values)
                if (!seen.insert(v).second)
                    throw schema_error("nominal attribute '" + a.name + "' declares '" + v + "' twice");
        }
        else if (!a.values.empty())
        {
            throw schema_error("non-nominal attribute '" + a.name + "' carries a value list");
        }
    }
    if (class_index)
    {
        if (*class_index >= attributes.size())
            throw schema_error("class index out of range");
        if (attributes[*class_index].kind != attribute_kind::nominal)
            throw schema_error("class attribute '" + attributes[*class_index].name + "' is not nominal");
    }
    for (std::size_t r = 0; r < instances.size(); ++r)
    {
        const auto& cells = instances[r];
        if (cells.size() != attributes.size())
            throw schema_error("instance " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                               " values, expected " + std::to_string(attributes.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
        {
            const auto& cell = cells[c];
            if (is_missing(cell))
                continue;
            const auto& a = attributes[c];
            const bool ok = std::visit(
                [&](const auto& v) -> bool {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        return a.kind == attribute_kind::numeric && std::isfinite(v);
                    else if constexpr (std::is_same_v<T, nominal>)
                        return a.kind == attribute_kind::nominal && v.index < a.values.size();
                    else if constexpr (std::is_same_v<T, std::string>)
                        return a.kind == attribute_kind::string;
                    else
                        return true;
                },
                cell);
            if (!ok)
                throw schema_error("instance " + std::to_string(r) + ": value for attribute '" + a.name +
                                   "' does not match its declaration");
        }
    }
}

bool dataset::has_missing() const
{
    for (const auto& r : instances)
        for (const auto& v : r)
            if (is_missing(v))
                return true;
    return false;
}

const attribute& dataset::class_attribute() const
{
    if (!class_index)
        throw schema_error("dataset '" + relation + "' has no class attribute");
    return attributes[*class_index];
}

std::uint32_t dataset::class_of(std::size_t instance) const
{
    class_attribute();
    const auto& cell = instances.at(instance).at(*class_index);
    if (const auto* n = std::get_if<nominal>(&cell))
        return n->index;
    throw schema_error("instance " + std::to_string(instance) + " has a missing class label");
}

}  // namespace senti::arff
