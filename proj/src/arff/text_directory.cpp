#include "senti/arff.hpp"

#include "senti/errors.hpp"
#include "senti/io.hpp"

#include <algorithm>

namespace senti::arff
{

namespace fs = std::filesystem;

dataset load_text_directory(const fs::path& root)
{
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        throw io_error("'" + root.string() + "' is not a directory");

    std::vector<std::string> classes;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory())
            classes.push_back(entry.path().filename().string());
    // directory_iterator order is unspecified
    std::sort(classes.begin(), classes.end());
    if (classes.empty())
        throw data_error("empty corpus: '" + root.string() + "' has no class subdirectories");

    dataset data;
    data.relation = root.filename().empty() ? root.parent_path().filename().string() : root.filename().string();
    if (data.relation.empty())
        data.relation = "corpus";
    data.attributes.push_back(attribute::string("text"));
    data.attributes.push_back(attribute::nominal("class", classes));
    data.class_index = 1;

    for (std::uint32_t c = 0; c < classes.size(); ++c)
    {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(root / classes[c]))
            if (entry.is_regular_file())
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
        {
            std::string text = io::read_text(f);
            if (io::find_invalid_utf8(text))
                throw data_error("'" + f.string() + "' is not valid UTF-8");
            data.instances.push_back({std::move(text), nominal{c}});
        }
    }
    if (data.instances.empty())
        throw data_error("empty corpus: no class subdirectory of '" + root.string() + "' contains files");
    data.validate();
    return data;
}

}  // namespace senti::arff
