// Writes the density + formal-degree catalog as JSON to the given path (or
// standard output). The checked-in data/catalog.json is produced by this tool;
// test_catalog verifies the file against the in-code constructors.
#include <planch/serialize.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    std::string text = planch::catalog_to_json().dump(1) + "\n";
    if (argc > 1) {
        std::ofstream out(argv[1]);
        if (!out.good()) {
            std::cerr << "cannot open " << argv[1] << "\n";
            return 4;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}
