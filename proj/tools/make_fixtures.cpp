// Regenerates the synthetic coefficient fixtures.
//
//   make-fixtures [output-dir]     (default: data/fixtures)

#include <filesystem>
#include <iostream>

#include "ramanujan/error.hpp"
#include "ramanujan/fixtures.hpp"

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data/fixtures";
    try {
        std::filesystem::create_directories(dir);
        ramanujan::fixtures::write_fixtures(dir);
    } catch (const ramanujan::Error& e) {
        std::cerr << "make-fixtures: " << e.what() << '\n';
        return 1;
    }
    std::cout << "wrote fixtures to " << dir.string() << '\n';
    return 0;
}
