#ifndef OMD_TESTS_FIXTURES_HPP
#define OMD_TESTS_FIXTURES_HPP

// Locating and reading the fixture corpus. The build defines
// OMD_FIXTURES_DIR as the absolute path of the repository's fixtures/
// directory; the environment variable of the same name overrides it.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace omd::testing {

inline std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("OMD_FIXTURES_DIR")) return env;
#ifdef OMD_FIXTURES_DIR
    return OMD_FIXTURES_DIR;
#else
    return "fixtures";
#endif
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string fixture_text(const std::string& relative) {
    return slurp(fixtures_dir() / relative);
}

// Every fixture file with one of the given extensions, as paths relative to
// the fixtures directory, sorted.
inline std::vector<std::string> fixture_files(const std::vector<std::string>& extensions) {
    std::vector<std::string> out;
    const std::filesystem::path root = fixtures_dir();
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        for (const std::string& wanted : extensions)
            if (ext == wanted) out.push_back(std::filesystem::relative(entry.path(), root).string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace omd::testing

#endif  // OMD_TESTS_FIXTURES_HPP
